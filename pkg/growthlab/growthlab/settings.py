"""Settings for the growthlab project.

Every limit used by the enumeration kernels lives here so a run can be tuned in one place.
"""

from fractions import Fraction
from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

REPORTS_DIR = BASE_DIR.parent / "reports"
FIXTURES_DIR = BASE_DIR / "tests" / "fixtures"

# Enumeration limits
ENUMERATION_BUDGET = 10**8
SUBSET_LIMIT = 20
CROSSRATIO_ENERGY_LIMIT = 30
BRIDGE_LIMIT = 12
COROLLARY_LIMIT = 64
AUDIT_LIMIT = 24
SEPARABILITY_ORACLE_LIMIT = 7
ENERGY_ORACLE_LIMIT = 10**6
GROUP_ENUMERATION_LIMIT = 10**6

# Prime fields up to this size use bitset backed sumsets
SMALL_BITSET_PRIME = 2**16

# Dense regime procedures
DEFAULT_EPSILON = Fraction(1, 16)
PSI_EPSILON = Fraction(1, 16)
ENERGY_COROLLARY_EPSILON = Fraction(1, 32)

# Incidence pipeline gates
REGULARITY_FACTOR = 4
HYPOTHESIS_CONSTANT = 1
MONITOR_CONSTANT = 4

# Largest modulus accepted by PrimeField
MAX_MODULUS = 2**64

# Growth scan monitors: max(|A+A|, |AA|) >= |A|^(5/4) and |f(A)| >= |A|^(1 + 1/53)
ELEKES_EXPONENT = Fraction(5, 4)
F_EXPONENT_GAIN = Fraction(1, 53)
