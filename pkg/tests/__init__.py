# Tests package for the episturmian toolkit