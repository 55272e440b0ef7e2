bound 6
level 1: b:0 b:1
level 2: a:*2 b:*2
level 3: b:*3
level 4: a:*4 b:*4
level 5: b:*5
level 6: a:*6 b:*6
rot 1: b:0 b:1
rot 2: a:*2 b:*2
rot 3: b:*3
rot 4: a:*4 b:*4
rot 5: b:*5
rot 6: a:*6 b:*6
deg 1 2: b:*2 b:*2
deg 1 3: b:*3 b:*3
deg 1 4: b:*4 b:*4
deg 1 5: b:*5 b:*5
deg 1 6: b:*6 b:*6
deg 2 4: a:*4 b:*4
deg 2 6: a:*6 b:*6
deg 3 6: b:*6
