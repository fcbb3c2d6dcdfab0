import numpy as np
from config import DEFAULTS
from constants import Verdict
from errors import NonPositiveWarpError, PreconditionError
from expression.evaluate import Expression
from field.classifier import classify, fit_torse_forming
from jet.kernel import MetricField, VectorField
from report import SampleReport
from scene.scene import AmbientScene
from submanifold.gram import orthonormal_basis

def verify_ambient_decomposition(metric, field, sample, verdict = None, tol = DEFAULTS):
  """
  Local warped-product structure around an anti-torqued field V with
  lam = |V| and E1 = V / lam: E1 is geodesic, E1(lam) = f (1 - lam^2), the
  leaves orthogonal to V are totally umbilical with connection forms
  (f / lam) delta_jk, and lam is constant along them.
  """
  if verdict is not None and verdict != Verdict.ANTI_TORQUED:
    raise PreconditionError('field is {}, not anti-torqued'.format(verdict.value))

  report = SampleReport('ambient-decomposition')
  for x in sample:
    fit = fit_torse_forming(metric, field, x, tol)
    at = metric.at(x, order = 1)
    V = field(x)
    lam = at.norm(V)
    E1 = V / lam
    nabla = fit.nabla

    # X(lam) = g~(nabla~_X V, V) / lam
    def d_lam(X):
      return at.inner(nabla @ X, V) / lam

    geodesic = at.norm(nabla @ E1 / lam - d_lam(E1) * V / lam**2)
    report.record('|nabla_E1 E1|', geodesic, tol.geodesic_tol, x)
    report.record('|E1(lam) - f(1 - lam^2)|', abs(d_lam(E1) - fit.f * (1.0 - lam**2)), tol.decomposition_tol, x,
                  f = fit.f, lam = lam)

    frame = orthonormal_basis([E1], at.g, tol)[1:]
    forms = np.array([[at.inner(nabla @ Ej / lam - d_lam(Ej) * V / lam**2, Ek) for Ek in frame] for Ej in frame])
    leaf = fit.f / lam
    report.record('|omega_1k(E_j) - (f/lam) delta_jk|', float(np.max(np.abs(forms - leaf * np.eye(len(frame))))),
                  tol.decomposition_tol, x, leaf_mean_curvature = leaf)
    report.record('|E_j(lam)|', max(abs(d_lam(Ej)) for Ej in frame), tol.decomposition_tol, x)
  return report

# ds^2 + lam(s)^2 g_F with the field d/ds; lam is an expression over s
def build_warped_ambient(lam, fiber_metric, s_interval = (0.0, 1.0), fiber_domain = None,
                         fiber_variables = None, name = 'warped', tol = DEFAULTS):
  k = len(fiber_metric)
  fiber_variables = list(fiber_variables or ['y{}'.format(i + 1) for i in range(k)])
  variables = ['s'] + fiber_variables
  lam_text = lam.text if isinstance(lam, Expression) else str(lam)
  lam_expr = Expression(lam_text, ['s'])

  grid = np.linspace(s_interval[0], s_interval[1], 201)
  values = np.array([lam_expr([s]) for s in grid])
  if np.min(values) <= 0.0:
    k_bad = int(np.argmin(values))
    raise NonPositiveWarpError('warping function {} = {:.6g} at s = {:.6g}'.format(lam_text, values[k_bad], grid[k_bad]))

  entries = [['1'] + ['0'] * k]
  for i in range(k):
    row = ['0'] + ['({})^2 * ({})'.format(lam_text, fiber_metric[i][j]) for j in range(k)]
    entries.append(row)
  metric = MetricField([[Expression(e, variables) for e in row] for row in entries], variables)
  field = VectorField([Expression('1' if i == 0 else '0', variables) for i in range(k + 1)], variables)

  if fiber_domain is None:
    fiber_domain = [[-1.0, 1.0]] * k
  domain = [list(s_interval)] + [list(d) for d in fiber_domain]
  scene = AmbientScene(metric, domain, field = field, name = name)
  scene.warping = lam_expr
  return scene

def converse_check(scene, sample, tol = DEFAULTS):
  reports = [fit_torse_forming(scene.metric, scene.field, x, tol) for x in sample]
  summary = classify(reports, tol)
  report = SampleReport('warped-converse')
  if summary.verdict == Verdict.PARALLEL:
    report.note('constant warping function: product metric with parallel d/ds')
  elif summary.verdict != Verdict.ANTI_TORQUED:
    raise PreconditionError('d/ds classified {}, not anti-torqued'.format(summary.verdict.value), witness = summary.witness)
  for x, fit in zip(sample, reports):
    jet = scene.warping.jet([x[0]], 1)
    expected = jet.gradient()[0] / jet.value
    report.record('|f - dlog(lam)/ds|', abs(fit.f - expected), tol.converse_tol, x, f = fit.f, expected = expected)
  return summary, report
