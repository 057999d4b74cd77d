# Apps package 