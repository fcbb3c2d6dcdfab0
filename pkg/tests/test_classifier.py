import numpy as np
import pytest
from config import Tolerances
from constants import Verdict
from errors import InconsistentSampleError, PreconditionError, SingularFitError, TooFewSamplesError, ZeroFieldError
from field.classifier import ClassificationReport, classify, fit_torse_forming, geodesic_unit_check
from scene.builtins import builtin
from scene.sampler import Sampler
from scene.scene import AmbientScene, load_scene
from tests.oracles import euclidean, metric_field, radial_field, vector_field

def radial_scene():
  metric, _ = euclidean(4)
  return AmbientScene(metric, [[-3.0, 3.0]] * 4, radial_field(4), 'radial', [{'center': [0.0] * 4, 'radius': 0.1}])

def test_radial_axis_is_anti_torqued():
  scene = radial_scene()
  sample = Sampler(42).ambient(scene, 200)
  reports = [fit_torse_forming(scene.metric, scene.field, x) for x in sample]
  summary = classify(reports)
  assert summary.verdict == Verdict.ANTI_TORQUED
  for x, r in zip(sample, reports):
    expected = 1.0 / np.linalg.norm(x)
    assert abs(r.f - expected) <= 1e-8 * expected
    np.testing.assert_allclose(r.omega, -expected * x / np.linalg.norm(x), atol = 1e-8)
    f_anti, residual = r.constrained[Verdict.ANTI_TORQUED]
    assert f_anti == pytest.approx(expected, rel = 1e-8)
    assert residual < 1e-10

def test_radial_axis_is_unit_geodesic():
  scene = radial_scene()
  sample = Sampler(42).ambient(scene, 200)
  value, point = geodesic_unit_check(scene.metric, scene.field, sample, Verdict.ANTI_TORQUED)
  assert value <= 1e-9
  assert len(point) == 4

def test_position_field_is_concircular():
  metric, variables = euclidean(3)
  field = vector_field(variables, variables)
  r = fit_torse_forming(metric, field, [0.5, -1.0, 2.0])
  assert r.verdict == Verdict.CONCIRCULAR
  assert r.f == pytest.approx(1.0)
  np.testing.assert_allclose(r.omega, 0.0, atol = 1e-12)

def test_constant_field_is_parallel():
  metric, variables = euclidean(3)
  r = fit_torse_forming(metric, vector_field(['1', '2', '0'], variables), [0.1, 0.2, 0.3])
  assert r.verdict == Verdict.PARALLEL
  assert r.f == pytest.approx(0.0, abs = 1e-12)

def test_rotation_field_is_not_torse_forming():
  metric, variables = euclidean(3)
  r = fit_torse_forming(metric, vector_field(['x2', '-x1', '0'], variables), [1.0, 0.5, 0.0])
  assert r.verdict == Verdict.NONE
  assert r.residual_torse > 0.1

def test_twisted_field_is_torqued():
  scene = load_scene(builtin('twisted-leaf'))
  x = np.array([0.4, 0.2, -0.3])
  r = fit_torse_forming(scene.metric, scene.field, x)
  lam = np.exp(x[0] + x[2] / 2.0)
  assert r.verdict == Verdict.TORQUED
  assert r.f == pytest.approx(lam, rel = 1e-9)
  np.testing.assert_allclose(r.omega, [0.0, 0.0, 0.5], atol = 1e-9)
  assert r.residual_torqued < 1e-12

def test_scale_changes_f_but_not_omega():
  metric, variables = euclidean(3)
  x = [0.3, 1.1, -0.7]
  norm = 'sqrt(x1^2 + x2^2 + x3^2)'
  base = fit_torse_forming(metric, radial_field(3), x)
  scaled = fit_torse_forming(metric, vector_field(['3*x1/{}'.format(norm), '3*x2/{}'.format(norm),
                                                   '3*x3/{}'.format(norm)], variables), x)
  assert scaled.f == pytest.approx(3.0 * base.f, rel = 1e-10)
  np.testing.assert_allclose(scaled.omega, base.omega, atol = 1e-10)
  # 3V has f = 3/|x| and nu = 3x/|x| while omega stays -x/|x|^2, so omega != -f nu
  assert base.verdict == Verdict.ANTI_TORQUED
  assert scaled.verdict == Verdict.TORSE_FORMING

def test_fit_in_a_curved_metric():
  # ds^2 + e^{2s} dy^2 with d/ds: f = 1, omega = -ds
  metric = metric_field([['1'], ['0', 'exp(2*s)']], ['s', 'y'])
  field = vector_field(['1', '0'], ['s', 'y'])
  r = fit_torse_forming(metric, field, [0.3, 0.1])
  assert r.verdict == Verdict.ANTI_TORQUED
  assert r.f == pytest.approx(1.0)
  np.testing.assert_allclose(r.omega, [-1.0, 0.0], atol = 1e-10)
  assert r.geodesic < 1e-12

def test_zero_field():
  metric, variables = euclidean(2)
  with pytest.raises(ZeroFieldError):
    fit_torse_forming(metric, vector_field(['x1', 'x2'], variables), [0.0, 0.0])

def fake(point, concircular):
  r = ClassificationReport(point)
  r.f = 1.0
  r.gradient_norm = 1.0
  r.residual_concircular = concircular
  return r

def test_inconsistent_sample():
  reports = [fake([float(k)], 0.0) for k in range(25)] + [fake([float(k)], 1e-3) for k in range(25, 50)]
  with pytest.raises(InconsistentSampleError) as info:
    classify(reports)
  assert info.value.witness[0] >= 25

def test_consistent_sample_within_band():
  reports = [fake([float(k)], 0.0) for k in range(25)] + [fake([float(k)], 1e-6) for k in range(25, 50)]
  summary = classify(reports)
  assert summary.verdict == Verdict.ANTI_TORQUED
  assert summary.f_summary() == {'min': 1.0, 'max': 1.0, 'mean': 1.0}

def test_too_few_points():
  with pytest.raises(TooFewSamplesError):
    classify([fake([0.0], 0.0)] * 10)
  summary = classify([fake([0.0], 0.0)] * 10, Tolerances({'class_min_points': 10}))
  assert summary.verdict == Verdict.CONCIRCULAR

def test_geodesic_check_preconditions():
  metric, variables = euclidean(2)
  position = vector_field(variables, variables)
  with pytest.raises(PreconditionError):
    geodesic_unit_check(metric, position, [[1.0, 1.0]], Verdict.CONCIRCULAR)
  with pytest.raises(PreconditionError):
    geodesic_unit_check(metric, vector_field(['2*x1/sqrt(x1^2 + x2^2)', '2*x2/sqrt(x1^2 + x2^2)'], variables),
                        [[1.0, 1.0]], Verdict.ANTI_TORQUED)

def exponential_field(a, c):
  # V = exp(a.x)(x + c) has nabla_X V = exp(a.x) X + (a.X) V
  exponent = ' + '.join('({!r})*x{}'.format(float(ai), i + 1) for i, ai in enumerate(a))
  return vector_field(['exp({})*(x{} + ({!r}))'.format(exponent, i + 1, float(ci)) for i, ci in enumerate(c)],
                      ['x{}'.format(i + 1) for i in range(len(c))])

@pytest.mark.parametrize("seed", range(5))
def test_fit_recovers_known_scalar_and_form(seed):
  rng = np.random.default_rng(seed)
  metric, _ = euclidean(3)
  a, c, x = rng.uniform(-1.0, 1.0, size = (3, 3))
  r = fit_torse_forming(metric, exponential_field(a, c), x)
  assert r.f == pytest.approx(np.exp(a @ x), rel = 1e-9)
  np.testing.assert_allclose(r.omega, a, rtol = 1e-9, atol = 1e-12)
  assert r.residual_torse < 1e-12

def test_fit_recovers_a_torqued_form():
  metric, _ = euclidean(3)
  x = np.array([0.2, -0.4, 0.9])
  c = np.array([1.0, 0.5, -0.3])
  w = x + c
  a = np.array([0.3, 0.7, -0.2])
  a = a - (a @ w) / (w @ w) * w
  r = fit_torse_forming(metric, exponential_field(a, c), x)
  assert r.verdict == Verdict.TORQUED
  np.testing.assert_allclose(r.omega, a, atol = 1e-9)

def test_fit_of_a_small_field():
  metric, variables = euclidean(3)
  x = [0.3, 1.1, -0.7]
  norm = 'sqrt(x1^2 + x2^2 + x3^2)'
  small = vector_field(['1e-6*{}/{}'.format(v, norm) for v in variables], variables)
  base = fit_torse_forming(metric, radial_field(3), x)
  r = fit_torse_forming(metric, small, x)
  assert r.v_norm == pytest.approx(1e-6)
  assert r.f == pytest.approx(1e-6 * base.f, rel = 1e-8)
  np.testing.assert_allclose(r.omega, base.omega, atol = 1e-8)
  assert r.verdict == Verdict.TORSE_FORMING

def test_one_dimensional_fit_is_singular():
  metric = metric_field([['1']], ['x'])
  with pytest.raises(SingularFitError):
    fit_torse_forming(metric, vector_field(['x'], ['x']), [1.0])

def test_class_hierarchy_and_disjointness():
  metric, variables = euclidean(3)
  twisted = load_scene(builtin('twisted-leaf'))
  cases = [
    (fit_torse_forming(metric, vector_field(['1', '2', '0'], variables), [0.1, 0.2, 0.3]), Verdict.PARALLEL),
    (fit_torse_forming(metric, vector_field(variables, variables), [0.5, -1.0, 2.0]), Verdict.CONCIRCULAR),
    (fit_torse_forming(metric, radial_field(3), [0.5, -1.0, 2.0]), Verdict.ANTI_TORQUED),
    (fit_torse_forming(twisted.metric, twisted.field, [0.4, 0.2, -0.3]), Verdict.TORQUED),
  ]
  for r, verdict in cases:
    assert r.verdict == verdict
    # every specific class sits inside torse-forming
    assert r.residual_torse <= 1e-7
    assert r.satisfies(Verdict.TORSE_FORMING)
  concircular, anti_torqued, torqued = (r for r, _ in cases[1:])
  assert concircular.satisfies(Verdict.TORQUED)
  assert not concircular.satisfies(Verdict.ANTI_TORQUED)
  # anti-torqued with f != 0 is never concircular, and never torqued
  assert abs(anti_torqued.f) > 0.1
  assert anti_torqued.class_residual(Verdict.CONCIRCULAR) > 1e-3
  assert anti_torqued.class_residual(Verdict.TORQUED) > 1e-3
  assert torqued.class_residual(Verdict.ANTI_TORQUED) > 1e-3
  assert torqued.class_residual(Verdict.CONCIRCULAR) > 1e-3

def test_anti_torqued_sample_stays_out_of_concircular():
  scene = radial_scene()
  reports = [fit_torse_forming(scene.metric, scene.field, x) for x in Sampler(4).ambient(scene, 50)]
  assert classify(reports).verdict == Verdict.ANTI_TORQUED
  for r in reports:
    assert r.residual_torse <= 1e-7
    assert not r.satisfies(Verdict.CONCIRCULAR)
