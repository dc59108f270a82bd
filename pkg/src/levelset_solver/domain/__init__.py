from levelset_solver.domain.grid import *
