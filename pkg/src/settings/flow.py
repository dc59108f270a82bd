# Runtime knobs of the flow solvers, the command-line front end and the HTTP API.
# Every value can be overridden by an environment variable of the same name.

import os


# Safety factor applied to the explicit level-set time step
LEVELSET_CFL_SAFETY = float(os.getenv("LEVELSET_CFL_SAFETY", "0.9"))

# Number of threads updating disjoint grid slabs during one level-set step
LEVELSET_WORKERS = int(os.getenv("LEVELSET_WORKERS", "1"))

# Local error per unit time of the RK4 reference integrator
FLOW_REFERENCE_TOLERANCE = float(os.getenv("FLOW_REFERENCE_TOLERANCE", "1e-10"))

# Grid resolutions (cells per axis) of the level-set convergence study
FLOW_CONVERGENCE_LADDER = tuple(
    int(n) for n in os.getenv("FLOW_CONVERGENCE_LADDER", "32,64,128").split(",") if n.strip()
)

# Number of radii in the phase (dr/dt against r) table, must be even
FLOW_PHASE_SAMPLES = int(os.getenv("FLOW_PHASE_SAMPLES", "200"))

# 17 significant digits make every written double round-trip losslessly
FLOW_CSV_SIGNIFICANT_DIGITS = int(os.getenv("FLOW_CSV_SIGNIFICANT_DIGITS", "17"))

FLOW_API_MAX_SAMPLES = int(os.getenv("FLOW_API_MAX_SAMPLES", "10000"))
