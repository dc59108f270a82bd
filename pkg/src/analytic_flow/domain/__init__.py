from analytic_flow.domain.params import *
from analytic_flow.domain.regime import *
from analytic_flow.domain.trajectory import *
from analytic_flow.domain.vanishing import *
