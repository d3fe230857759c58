# src package for the episturmian toolkit 