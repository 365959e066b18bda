RMAT_A = 0.45
RMAT_B = 0.15
RMAT_C = 0.15
RMAT_D = 0.25

# attempts per edge before the generator gives up on a too dense request
RMAT_MAX_ATTEMPTS_PER_EDGE = 1000

COMMUNITY_COUNT = 20

SUBSTITUTE_BUDGET = 3

EIGENVECTOR_TOLERANCE = 1e-8
EIGENVECTOR_MAX_ITERATIONS = 1000

# largest number of subsets the brute-force oracle agrees to enumerate
ORACLE_SUBSET_LIMIT = 10**7

# largest number of nodes explored by the binary program solver
SOLVER_NODE_LIMIT = 2_000_000
