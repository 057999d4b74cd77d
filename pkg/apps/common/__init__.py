# Common app 