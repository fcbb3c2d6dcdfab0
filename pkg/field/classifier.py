import numpy as np
from config import DEFAULTS
from constants import VERDICT_PRECEDENCE, Verdict
from jet.kernel import christoffel
from errors import InconsistentSampleError, PreconditionError, SingularFitError, TooFewSamplesError, ZeroFieldError

MAX_CONDITION = 1.0e12

class ClassificationReport:
  """
  Torse-forming fit of a vector field at one ambient point.

  omega is the generating form in chart components, W its metric dual and
  nabla[k, i] = (nabla~_{d_i} V)^k. Residuals are normalized by
  max(1, |nabla~ V|).
  """
  def __init__(self, point):
    self.point = np.array(point, dtype = float)
    self.f = 0.0
    self.omega = None
    self.W = None
    self.nabla = None
    self.v_norm = 0.0
    self.gradient_norm = 0.0
    self.residual_torse = 0.0
    self.residual_concircular = 0.0
    self.residual_torqued = 0.0
    self.residual_antitorqued = 0.0
    self.geodesic = 0.0
    self.condition = 1.0
    # Best fit of each restricted class: {verdict: (f, residual)}
    self.constrained = {}
    self.verdict = Verdict.NONE

  # Residual that decides membership of the given class at this point
  def class_residual(self, verdict, tol = DEFAULTS):
    if verdict == Verdict.PARALLEL:
      return self.gradient_norm
    if verdict == Verdict.NONE:
      return 0.0
    extra = {
      Verdict.CONCIRCULAR: self.residual_concircular,
      Verdict.ANTI_TORQUED: self.residual_antitorqued,
      Verdict.TORQUED: self.residual_torqued,
    }.get(verdict, 0.0)
    return max(self.residual_torse, extra)

  def satisfies(self, verdict, tol = DEFAULTS):
    limit = tol.parallel_tol if verdict == Verdict.PARALLEL else tol.class_tol
    return self.class_residual(verdict, tol) <= limit

# Minimize |A z - b| through the normal equations, Cholesky factorized
def _least_squares(A, b):
  N = A.T @ A
  condition = float(np.linalg.cond(N))
  if not np.isfinite(condition) or condition > MAX_CONDITION:
    raise SingularFitError('torse-forming normal equations are singular', condition)
  L = np.linalg.cholesky(N)
  z = np.linalg.solve(L.T, np.linalg.solve(L, A.T @ b))
  return z, float(np.linalg.norm(A @ z - b)), condition

# Fit nabla~_X V = f X + omega(X) V in the orthonormal frame e_a = L^{-T} d_a, g = L L^T,
# where it reads K = f I + v omega^T with K = L^T nabla~V L^{-T} and v = L^T V
def fit_torse_forming(metric, field, point, tol = DEFAULTS):
  report = ClassificationReport(point)
  at = metric.at(point, order = 1)
  V = field.at(point, order = 1)
  v_norm = at.norm(V.components)
  if v_norm <= tol.zero_field_tol:
    raise ZeroFieldError('field vanishes at {}'.format(list(report.point)))

  gamma = christoffel(at, tol)
  nabla = V.jacobian + np.einsum('kij,j->ki', gamma, V.components)
  L = at.cholesky(tol)
  Linv_T = np.linalg.inv(L).T
  K = L.T @ nabla @ Linv_T
  v = L.T @ V.components
  m = len(v)

  # Unknowns (f, |v| omega_1 .. |v| omega_m); row (k, a) matches K[k, a]
  v_unit = v / v_norm
  A = np.zeros((m * m, m + 1))
  for k in range(m):
    for a in range(m):
      row = k * m + a
      A[row, 0] = 1.0 if k == a else 0.0
      A[row, 1 + a] = v_unit[k]
  b = K.reshape(-1)
  z, residual, condition = _least_squares(A, b)
  f, omega_frame = float(z[0]), z[1:] / v_norm

  scale = max(1.0, float(np.linalg.norm(K)))
  omega = L @ omega_frame
  report.f = f
  report.omega = omega
  report.W = at.raise_index(omega, tol)
  report.nabla = nabla
  report.v_norm = v_norm
  report.gradient_norm = float(np.linalg.norm(K))
  report.condition = condition
  report.residual_torse = residual / scale
  report.residual_concircular = float(np.linalg.norm(omega_frame)) / scale
  report.residual_torqued = abs(float(omega_frame @ v)) / scale
  report.residual_antitorqued = float(np.linalg.norm(omega_frame + f * v)) / scale
  report.geodesic = at.norm(nabla @ V.components)
  report.constrained = _constrained_fits(K, v, scale)

  for verdict in VERDICT_PRECEDENCE:
    if report.satisfies(verdict, tol):
      report.verdict = verdict
      break
  return report

def _constrained_fits(K, v, scale):
  m = len(v)
  I = np.eye(m)
  fits = {}

  f = float(np.trace(K)) / m
  fits[Verdict.CONCIRCULAR] = (f, float(np.linalg.norm(K - f * I)) / scale)

  # omega = -f nu, so K = f (I - v v^T)
  P = I - np.outer(v, v)
  pp = float(np.sum(P * P))
  f = float(np.sum(K * P)) / pp if pp > 0.0 else 0.0
  fits[Verdict.ANTI_TORQUED] = (f, float(np.linalg.norm(K - f * P)) / scale)

  # omega restricted to the orthogonal complement of v
  basis = np.linalg.svd(v.reshape(1, -1))[2][1:]
  columns = [I.reshape(-1)] + [np.outer(v, q).reshape(-1) for q in basis]
  A = np.array(columns).T
  z, *_ = np.linalg.lstsq(A, K.reshape(-1), rcond = None)
  fits[Verdict.TORQUED] = (float(z[0]), float(np.linalg.norm(A @ z - K.reshape(-1))) / scale)
  return fits

class SceneClassification:
  def __init__(self, verdict, reports, witness, worst):
    self.verdict = verdict
    self.reports = reports
    self.witness = witness
    self.worst = worst

  def f_summary(self):
    f = np.array([r.f for r in self.reports])
    return {'min': float(f.min()), 'max': float(f.max()), 'mean': float(f.mean())}

  def residuals(self):
    keys = ('residual_torse', 'residual_concircular', 'residual_torqued', 'residual_antitorqued')
    return {k: float(max(getattr(r, k) for r in self.reports)) for k in keys}

# Most specific class satisfied at every point; points on both sides of class_band are inconsistent
def classify(reports, tol = DEFAULTS):
  if len(reports) < tol.class_min_points:
    raise TooFewSamplesError('classification needs {} points, got {}'.format(tol.class_min_points, len(reports)))

  chosen = Verdict.NONE
  for verdict in VERDICT_PRECEDENCE:
    if all(r.satisfies(verdict, tol) for r in reports):
      chosen = verdict
      break

  for verdict in VERDICT_PRECEDENCE[:VERDICT_PRECEDENCE.index(chosen)]:
    inside = [r for r in reports if r.satisfies(verdict, tol)]
    outside = [r for r in reports if r.class_residual(verdict, tol) > tol.class_band]
    if inside and outside:
      worst = max(outside, key = lambda r: r.class_residual(verdict, tol))
      raise InconsistentSampleError(
        '{} of {} points are {}, but the field leaves that class at {}'.format(
          len(inside), len(reports), verdict.value, list(np.round(worst.point, 6))),
        witness = worst.point)

  worst = max(reports, key = lambda r: r.class_residual(chosen, tol))
  return SceneClassification(chosen, reports, worst.point, worst.class_residual(chosen, tol))

def geodesic_unit_check(metric, field, points, verdict = None, tol = DEFAULTS):
  reports = [p if isinstance(p, ClassificationReport) else fit_torse_forming(metric, field, p, tol) for p in points]
  if verdict is not None and verdict != Verdict.ANTI_TORQUED:
    raise PreconditionError('field is {}, not anti-torqued'.format(verdict.value))
  unit = max(reports, key = lambda r: abs(r.v_norm - 1.0))
  if abs(unit.v_norm - 1.0) > tol.unit_tol:
    raise PreconditionError('field is not unit: |V| = {:.6g} at {}'.format(unit.v_norm, list(unit.point)),
                            witness = unit.point)
  worst = max(reports, key = lambda r: r.geodesic)
  return worst.geodesic, worst.point
