system terminating
props a b
state s0 { a }
state s1 { b }
init s0
terminal s1
edge s0 s1
