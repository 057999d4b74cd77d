# Settings package 