"""Global numeric tolerances and limits.

EPS is the single equality tolerance used by all downstream matrix and
quaternion comparisons.  It can be overridden through the ORTHOSYM_EPS
environment variable (read once, at import time).
"""

import os

EPS = float(os.environ.get("ORTHOSYM_EPS", "1e-9"))

# Scalar-level algebraic identities are held to a tighter tolerance than EPS.
EPS_SCALAR = 1e-12

# Constructors renormalize unit quaternions whose norm has drifted by at most
# this much; anything worse is rejected as a genuine error.
UNIT_NORM_SLACK = 1e-6

# Matrix entries are rounded to this many decimal digits to form hash keys.
HASH_DIGITS = 6

MAX_GROUP_ORDER = 10_000
ORDER_CAP = 10_000
