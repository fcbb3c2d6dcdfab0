import math
import numpy as np
import pytest
from constants import Verdict
from errors import PreconditionError
from expression.evaluate import Expression
from rectifying.verifier import (avperp_report, check_Avperp_zero, rectifying_residual, verify_normal_vanishes,
                                 verify_rectifying, verify_tangential_vanishes, verify_torqued_props)
from scene.builtins import builtin
from scene.sampler import Sampler
from scene.scene import load_scene
from submanifold.frames import frames
from submanifold.immersion import Immersion
from tests.oracles import euclidean, radial_field, vector_field

def scene_and_sample(name, count = 50):
  scene = load_scene(builtin(name))
  return scene, Sampler(scene.seed).parameters(scene, count, scene.tolerances)

def plane(offset):
  variables = ['u', 'v']
  return Immersion([Expression(c, variables) for c in ['u', 'v', offset]], variables, [[0.5, 2.0], [0.5, 2.0]])

def test_rectifying_psi_scene_is_proper_rectifying():
  scene, sample = scene_and_sample('rectifying-psi')
  report = verify_rectifying(scene.immersion, scene.metric, scene.field, sample)
  assert report.mode == 'proper'
  assert report.proper
  assert report.items['rectifying']['worst'] <= 1e-7
  assert report.passed
  assert max(report.avperp) <= 1e-8
  assert min(report.v_top) > 1e-8 and min(report.v_perp) > 1e-8

def test_rectifying_psi_scene_tangential_part():
  scene, sample = scene_and_sample('rectifying-psi', 5)
  for u in sample:
    packet = frames(scene.immersion, scene.metric, u, field = scene.field)
    s = u[0]
    # |V^T| = s / sqrt(1 + s^2) for the unit radial axis
    assert packet.norm(packet.v_top) == pytest.approx(s / math.sqrt(1.0 + s**2), abs = 1e-10)

def test_rectifying_residual_is_scale_invariant():
  scene, sample = scene_and_sample('unit-sphere', 5)
  scaled = vector_field(['2.5*x{}/sqrt(x1^2 + x2^2 + x3^2)'.format(i) for i in range(1, 4)], ['x1', 'x2', 'x3'])
  for u in sample:
    a = rectifying_residual(scene.immersion, scene.metric, scene.field, u)
    b = rectifying_residual(scene.immersion, scene.metric, scaled, u)
    assert a == pytest.approx(b, abs = 1e-9)

def test_unit_sphere_is_not_rectifying():
  scene, sample = scene_and_sample('unit-sphere')
  report = verify_rectifying(scene.immersion, scene.metric, scene.field, sample)
  assert not report.passed
  assert report.items['rectifying']['worst'] >= 0.99
  avperp = avperp_report(scene.immersion, scene.metric, scene.field, sample)
  assert avperp.items['|A_Vperp|']['worst'] == pytest.approx(math.sqrt(2.0), abs = 1e-9)
  np.testing.assert_allclose(avperp.items['|A_Vperp|']['witness']['values']['A'], -np.eye(2), atol = 1e-9)

def test_planes_have_zero_residual():
  metric, _ = euclidean(3)
  field = radial_field(3)
  imm = plane('1')
  for u in [[0.7, 1.1], [1.9, 0.6]]:
    assert rectifying_residual(imm, metric, field, u) == 0.0
    assert check_Avperp_zero(frames(imm, metric, u, field = field)) == pytest.approx(0.0, abs = 1e-12)

def test_tangential_theorem_on_clifford_torus():
  scene, sample = scene_and_sample('clifford-torus')
  for u in sample:
    packet = frames(scene.immersion, scene.metric, u, field = scene.field)
    assert packet.norm(packet.v_top) <= 1e-10
  report = verify_tangential_vanishes(scene.immersion, scene.metric, scene.field, sample)
  assert report.items['|A_Vperp + f Id|']['worst'] <= 1e-8
  assert report.items['|D V_perp|']['worst'] <= 1e-8
  assert report.items['|A_Vperp + f Id|']['witness']['values']['f'] == pytest.approx(1.0)

def test_tangential_theorem_on_hypersphere():
  scene, sample = scene_and_sample('hypersphere', 20)
  report = verify_tangential_vanishes(scene.immersion, scene.metric, scene.field, sample)
  assert report.passed
  assert report.items['|A_Vperp + f Id|']['witness']['values']['f'] == pytest.approx(0.5)

def test_tangential_theorem_needs_a_normal_axis():
  metric, _ = euclidean(3)
  with pytest.raises(PreconditionError):
    verify_tangential_vanishes(plane('1'), metric, radial_field(3), [[0.7, 1.1], [1.5, 1.5]])

def test_normal_theorem_on_tangent_developable():
  scene, sample = scene_and_sample('tangent-developable')
  for u in sample:
    packet = frames(scene.immersion, scene.metric, u, field = scene.field)
    assert packet.norm(packet.v_perp) <= 1e-8
  report = verify_normal_vanishes(scene.immersion, scene.metric, scene.field, sample)
  assert report.passed
  assert report.items['det A_xi']['worst'] <= 1e-8
  entry = report.items['|K~ - K|']
  assert entry['worst'] <= 1e-7
  assert abs(entry['witness']['values']['ambient']) <= 1e-7
  assert abs(entry['witness']['values']['intrinsic']) <= 1e-7

def test_normal_theorem_on_cone():
  scene, sample = scene_and_sample('cone', 100)
  report = verify_normal_vanishes(scene.immersion, scene.metric, scene.field, sample)
  assert report.items['det A_xi']['worst'] <= 1e-8
  assert report.passed
  assert 'hypersurface: shape operator determinant vanishes' in report.notes
  assert report.items['|R~(X,Y)V_top - R(X,Y)V_top|']['worst'] <= 1e-7
  assert report.items['|K~ - K|']['worst'] <= 1e-7

def test_normal_theorem_on_plane_through_origin():
  metric, _ = euclidean(3)
  report = verify_normal_vanishes(plane('0'), metric, radial_field(3), [[0.7, 1.1], [1.9, 0.6]])
  assert report.passed

def test_cone_rectifying_is_tangent_axis_mode():
  scene, sample = scene_and_sample('cone', 30)
  report = verify_rectifying(scene.immersion, scene.metric, scene.field, sample)
  assert report.mode == 'tangent-axis hypersurface'
  assert not report.proper
  assert 'det A_xi' in report.items

def test_normal_axis_off_hypersurfaces_is_a_precondition_failure():
  scene, sample = scene_and_sample('clifford-torus', 10)
  metric, _ = euclidean(4)
  # E/|E| is normal to the torus, so the normal-part theorem does not apply
  with pytest.raises(PreconditionError):
    verify_normal_vanishes(scene.immersion, metric, scene.field, sample)

def test_torqued_axis_tangent_to_a_leaf():
  scene, sample = scene_and_sample('twisted-leaf', 20)
  report = verify_torqued_props(scene.immersion, scene.metric, scene.field, sample, Verdict.TORQUED)
  assert 'case: axis tangent to M' in report.notes
  assert report.passed
  assert report.items['concircular on M']['worst'] <= 1e-7

def test_torqued_axis_normal_to_a_fiber():
  scene, sample = scene_and_sample('twisted-fiber', 20)
  report = verify_torqued_props(scene.immersion, scene.metric, scene.field, sample, Verdict.TORQUED)
  assert 'case: axis normal to M' in report.notes
  assert report.passed
  assert report.items['|D_Wtop V_perp - |W_top|^2 V_perp|']['worst'] <= 1e-7

def test_torqued_props_reject_anti_torqued_axes():
  scene, sample = scene_and_sample('clifford-torus', 5)
  with pytest.raises(PreconditionError):
    verify_torqued_props(scene.immersion, scene.metric, scene.field, sample, Verdict.ANTI_TORQUED)
  with pytest.raises(PreconditionError):
    verify_torqued_props(scene.immersion, scene.metric, scene.field, sample)

@pytest.mark.parametrize("name", ['cone', 'tangent-developable', 'twisted-leaf'])
def test_section_curvature_gap_follows_from_the_curvature_gap(name):
  scene, sample = scene_and_sample(name, 10)
  tol = scene.tolerances
  for u in sample:
    report = verify_normal_vanishes(scene.immersion, scene.metric, scene.field, [u])
    curvature = report.items['|R~(X,Y)V_top - R(X,Y)V_top|']['worst']
    sectional = report.items['|K~ - K|']['worst']
    packet = frames(scene.immersion, scene.metric, u, field = scene.field)
    t = packet.tangent @ packet.G @ packet.v_top
    tt = float(t @ t)
    denoms = [tt - t[a]**2 for a in range(packet.n) if tt - t[a]**2 > tol.degeneracy_tol * tt]
    # K~ - K on span{e_a, V_top} contracts the same tensor with e_a twice
    assert sectional <= curvature * float(np.sum(np.abs(t))) / min(denoms) + 1e-12
