from skorokhod_integrals.metrics.config import MetricConfig
from skorokhod_integrals.metrics.j1 import d_J1, j1_critical_values, j1_feasible
from skorokhod_integrals.metrics.m1 import d_M1, frechet_decision, frechet_distance
from skorokhod_integrals.metrics.moduli import (
    hat_w,
    increment_count,
    u_osc,
    varsigma,
    varsigma_sentinel,
    w_prime,
)
