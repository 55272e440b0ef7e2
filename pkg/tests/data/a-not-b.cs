bound 6
level 1:
level 2: *2
level 3:
level 4: *4
level 5:
level 6: *6
rot 2: *2
rot 4: *4
rot 6: *6
deg 2 4: *4
deg 2 6: *6
