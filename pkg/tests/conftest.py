"""Shared fixtures: the four reference models and a random-model strategy.

The references are small rational-coefficient models whose derived
quantities have closed forms, used to freeze expected values:

  sym          unit covariances, drifts (1,1)/(1,-1), zero skew; fully
               symmetric, both corners degenerate, divergence form
  asym         lower covariance diag(1,4), divergence-form skew (0,-0.6);
               non-degenerate corners, no transform pole
  asym_mirror  the reflection of asym through the interface
  pole_model   sym with skew (4,0); the interface symbol gains a real
               zero at x = 6/17
"""

import math

import pytest
from hypothesis import strategies as st

from layered_green import validate


@pytest.fixture(scope="session")
def sym():
    return validate((1, 0, 1), (1, 0, 1), (1, 1), (1, -1), (0, 0))


@pytest.fixture(scope="session")
def asym():
    return validate((1, 0, 1), (1, 0, 4), (1, 1), (1, -1), "divergence")


@pytest.fixture(scope="session")
def asym_mirror():
    return validate((1, 0, 4), (1, 0, 1), (1, 1), (1, -1), "divergence")


@pytest.fixture(scope="session")
def pole_model():
    return validate((1, 0, 1), (1, 0, 1), (1, 1), (1, -1), (4, 0))


def _cov(s11, s22, rho):
    return (s11, rho * math.sqrt(s11 * s22), s22)


@st.composite
def model_params(draw, divergence=False, max_q1=2.0):
    """Random admissible parameter set with moderate conditioning, so
    derived quantities stay in a numerically friendly range."""
    sp = _cov(draw(st.floats(0.4, 2.5)), draw(st.floats(0.4, 2.5)),
              draw(st.floats(-0.7, 0.7)))
    sm = _cov(draw(st.floats(0.4, 2.5)), draw(st.floats(0.4, 2.5)),
              draw(st.floats(-0.7, 0.7)))
    mu_p = (draw(st.floats(0.2, 2.0)), draw(st.floats(0.2, 2.0)))
    mu_m = (draw(st.floats(0.2, 2.0)), -draw(st.floats(0.2, 2.0)))
    if divergence:
        q = "divergence"
    else:
        q = (draw(st.floats(-max_q1, max_q1)),
             draw(st.floats(-0.85, 0.85)))
    return validate(sp, sm, mu_p, mu_m, q)
