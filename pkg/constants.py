import enum

# Exit codes of the command-line driver
class StatusType(enum.IntEnum):
  OK = 0
  FAIL = 1
  SCENE_ERROR = 2
  NUMERIC_ERROR = 3

class CheckStatus(str, enum.Enum):
  PASS = 'pass'
  FAIL = 'fail'
  NA = 'n/a'
  ERROR = 'error'

class LogLevel(enum.IntEnum):
  DEBUG = 0
  INFO = 1
  WARN = 2
  ERROR = 3

# Vector field classes, most specific first
class Verdict(str, enum.Enum):
  PARALLEL = 'parallel'
  CONCIRCULAR = 'concircular'
  ANTI_TORQUED = 'anti-torqued'
  TORQUED = 'torqued'
  TORSE_FORMING = 'torse-forming'
  NONE = 'none'

VERDICT_PRECEDENCE = (
  Verdict.PARALLEL,
  Verdict.CONCIRCULAR,
  Verdict.ANTI_TORQUED,
  Verdict.TORQUED,
  Verdict.TORSE_FORMING,
  Verdict.NONE,
)

# Check names in dependency order
class CheckType(str, enum.Enum):
  CLASSIFY = 'classify'
  GEODESIC = 'geodesic'
  AMBIENT_DECOMPOSITION = 'ambient-decomposition'
  GAUSS = 'gauss'
  TANGENTIAL_THEOREM = 'tangential-theorem'
  NORMAL_THEOREM = 'normal-theorem'
  TORQUED = 'torqued'
  RECTIFYING = 'rectifying'
  AVPERP = 'avperp'
  WARP_ODE = 'warp-ode'
  WARP_FIT = 'warp-fit'

CHECK_ORDER = tuple(CheckType)

# Checks that need an ambient vector field / an immersion
FIELD_CHECKS = frozenset([
  CheckType.CLASSIFY, CheckType.GEODESIC, CheckType.AMBIENT_DECOMPOSITION,
  CheckType.TANGENTIAL_THEOREM, CheckType.NORMAL_THEOREM, CheckType.TORQUED,
  CheckType.RECTIFYING, CheckType.AVPERP, CheckType.WARP_ODE, CheckType.WARP_FIT,
])
IMMERSION_CHECKS = frozenset([
  CheckType.GAUSS, CheckType.TANGENTIAL_THEOREM, CheckType.NORMAL_THEOREM,
  CheckType.TORQUED, CheckType.RECTIFYING, CheckType.AVPERP,
  CheckType.WARP_ODE, CheckType.WARP_FIT,
])

DEFAULT_SEED = 42
DEFAULT_POINTS = 50

# Curve tracing defaults for the warping checks
CURVE_LENGTH = 1.0
CURVE_STEP = 1.0e-2
