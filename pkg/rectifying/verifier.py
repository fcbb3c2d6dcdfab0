import numpy as np
from config import DEFAULTS
from constants import Verdict
from errors import PreconditionError
from field.classifier import fit_torse_forming
from report import SampleReport
from submanifold.frames import FieldAlongM, decompose_field, frames, gauss_tensors, shape_operator

# mode is proper, improper or tangent-axis hypersurface
class RectifyingReport(SampleReport):
  def __init__(self):
    super().__init__('rectifying')
    self.mode = None
    self.proper = True
    self.v_top = []
    self.v_perp = []
    self.avperp = []

# max |g~(V/|V|, h(e_i, e_j))| over i <= j, over max(1, |h| |V^perp|)
def rectifying_residual(imm, metric, field, u, tol = DEFAULTS, packet = None):
  if packet is None:
    packet = frames(imm, metric, u, field = field, tol = tol)
  V = packet.field / packet.norm(packet.field)
  weights = packet.normal @ packet.G @ V
  n = packet.n
  pairs = [(a, b) for a in range(n) for b in range(a, n)]
  numerator = max(abs(float(weights @ packet.h[:, a, b])) for a, b in pairs)
  h_norm = max(float(np.linalg.norm(packet.h[:, a, b])) for a, b in pairs)
  return numerator / max(1.0, h_norm * float(np.linalg.norm(weights)))

# Frobenius norm of the shape operator in the normal part of the axis
def check_Avperp_zero(packet, tol = DEFAULTS):
  _, perp, _, _ = decompose_field(packet)
  return float(np.linalg.norm(shape_operator(packet, perp, tol)))

def verify_rectifying(imm, metric, field, sample, tol = DEFAULTS):
  report = RectifyingReport()
  packets = [frames(imm, metric, u, field = field, tol = tol) for u in sample]
  for packet in packets:
    _, _, top, perp = decompose_field(packet)
    report.v_top.append(top)
    report.v_perp.append(perp)

  if max(report.v_perp) <= tol.proper_tol:
    if imm.m - imm.n == 1:
      report.mode = 'tangent-axis hypersurface'
      report.proper = False
      report.note('axis is tangent to the hypersurface; checked through the normal-part theorem')
      normal = verify_normal_vanishes(imm, metric, field, sample, tol)
      report.items.update(normal.items)
      report.notes += normal.notes
      return report
    worst = int(np.argmax(report.v_perp))
    raise PreconditionError('normal part of the axis vanishes on the whole sample', witness = sample[worst])

  report.proper = min(report.v_top) > tol.proper_tol and min(report.v_perp) > tol.proper_tol
  report.mode = 'proper' if report.proper else 'improper'
  for u, packet, top, perp in zip(sample, packets, report.v_top, report.v_perp):
    residual = rectifying_residual(imm, metric, field, u, tol, packet)
    report.record('rectifying', residual, tol.rect_tol, u, norm_V_top = top, norm_V_perp = perp)
    report.record('V_perp = 0', float(perp <= tol.proper_tol), 0.0, u, norm_V_perp = perp)
    report.avperp.append(check_Avperp_zero(packet, tol))
  if not report.proper:
    report.note('axis is not proper: tangential part vanishes somewhere on the sample')
  return report

def avperp_report(imm, metric, field, sample, tol = DEFAULTS):
  report = SampleReport('avperp')
  for u in sample:
    packet = frames(imm, metric, u, field = field, tol = tol)
    _, perp, _, _ = decompose_field(packet)
    A = shape_operator(packet, perp, tol)
    report.record('|A_Vperp|', float(np.linalg.norm(A)), tol.avperp_tol, u,
                  A = A, rectifying = rectifying_residual(imm, metric, field, u, tol, packet))
  return report

def _require_small(values, sample, limit, what):
  worst = int(np.argmax(values))
  if values[worst] > limit:
    raise PreconditionError('{} does not vanish: {:.3e} at {}'.format(what, values[worst], list(np.round(sample[worst], 6))),
                            witness = sample[worst])

# Axis normal to M: V^perp is parallel in the normal bundle and A_{V^perp} = -f Id
def verify_tangential_vanishes(imm, metric, field, sample, tol = DEFAULTS):
  packets = [frames(imm, metric, u, field = field, tol = tol) for u in sample]
  _require_small([decompose_field(p)[2] for p in packets], sample, tol.parallel_normal_tol, 'tangential part of the axis')

  report = SampleReport('tangential-theorem')
  for u, packet in zip(sample, packets):
    along = FieldAlongM(imm, metric, field, u, tol)
    D = max(packet.norm(along.normal_connection(packet.frame_coords[:, a])) for a in range(packet.n))
    f = fit_torse_forming(metric, field, packet.point, tol).f
    A = shape_operator(packet, packet.v_perp, tol)
    umbilic = float(np.linalg.norm(A + f * np.eye(packet.n)))
    report.record('|D V_perp|', D, tol.parallel_normal_tol, u)
    report.record('|A_Vperp + f Id|', umbilic, tol.umbilic_tol, u, f = f, A = A)
  return report

def verify_normal_vanishes(imm, metric, field, sample, tol = DEFAULTS):
  packets = [frames(imm, metric, u, field = field, tol = tol) for u in sample]
  _require_small([decompose_field(p)[3] for p in packets], sample, tol.parallel_normal_tol, 'normal part of the axis')

  report = SampleReport('normal-theorem')
  if imm.m - imm.n == 1:
    report.note('hypersurface: shape operator determinant vanishes')
  for u, packet in zip(sample, packets):
    det = max(abs(float(np.linalg.det(packet.h[c]))) for c in range(packet.m - packet.n))
    report.record('det A_xi', det, tol.det_tol, u)

    top = packet.tangent_coords(packet.v_top)
    h_top = max(packet.norm(packet.h_of(packet.frame_coords[:, a], top)) for a in range(packet.n))
    report.record('|h(X, V_top)|', h_top, tol.parallel_normal_tol, u)

    intrinsic, ambient, _ = gauss_tensors(imm, metric, u, tol)
    t = packet.tangent @ packet.G @ packet.v_top
    curvature = float(np.max(np.abs(np.einsum('abcd,c->abd', ambient - intrinsic, t)))) if packet.n > 1 else 0.0
    report.record('|R~(X,Y)V_top - R(X,Y)V_top|', curvature, tol.curvature_tol, u)

    sectional = _section_difference(intrinsic, ambient, t, tol)
    if sectional is not None:
      report.record('|K~ - K|', sectional[0], tol.curvature_tol, u, ambient = sectional[1], intrinsic = sectional[2])
  return report

# Sectional curvatures of the planes spanned by V^T and each frame vector
def _section_difference(intrinsic, ambient, t, tol):
  n = len(t)
  worst = None
  for a in range(n):
    x = np.eye(n)[a]
    tt, xt = float(t @ t), float(x @ t)
    denom = tt - xt * xt
    if denom <= tol.degeneracy_tol * tt:
      continue
    K_ambient = float(np.einsum('abcd,a,b,c,d->', ambient, x, t, t, x)) / denom
    K_intrinsic = float(np.einsum('abcd,a,b,c,d->', intrinsic, x, t, t, x)) / denom
    diff = abs(K_ambient - K_intrinsic)
    if worst is None or diff > worst[0]:
      worst = (diff, K_ambient, K_intrinsic)
  return worst

def verify_torqued_props(imm, metric, field, sample, verdict = None, tol = DEFAULTS):
  """
  Torqued axis with V^perp = 0: V^T is concircular on M and every shape
  operator is singular. With V^T = 0: A_{V^perp} = -f Id, D_X V^perp = 0
  for X orthogonal to W^T and D_{W^T} V^perp = |W^T|^2 V^perp.
  """
  if verdict is not None and verdict != Verdict.TORQUED:
    raise PreconditionError('field is {}, not torqued'.format(verdict.value))
  packets = [frames(imm, metric, u, field = field, tol = tol) for u in sample]
  tops = [decompose_field(p)[2] for p in packets]
  perps = [decompose_field(p)[3] for p in packets]
  fits = [fit_torse_forming(metric, field, p.point, tol) for p in packets]
  for u, fit in zip(sample, fits):
    if fit.residual_torqued > tol.class_tol or fit.residual_torse > tol.class_tol:
      raise PreconditionError('field is not torqued at {} (|omega(V)| = {:.3e})'.format(
        list(np.round(u, 6)), fit.residual_torqued), witness = u)

  report = SampleReport('torqued')
  if max(perps) <= tol.proper_tol:
    report.note('case: axis tangent to M')
    for u, packet, fit in zip(sample, packets, fits):
      along = FieldAlongM(imm, metric, field, u, tol)
      # K[c, a] = g~(nabla_{e_a} V^T, e_c)
      K = np.array([packet.tangent @ packet.G @ along.intrinsic_top(packet.frame_coords[:, a])
                    for a in range(packet.n)]).T
      f_intrinsic = float(np.trace(K)) / packet.n
      residual = float(np.linalg.norm(K - f_intrinsic * np.eye(packet.n))) / max(1.0, float(np.linalg.norm(K)))
      report.record('concircular on M', residual, tol.class_tol, u, f_intrinsic = f_intrinsic, f = fit.f)
      report.record('|f_M - f|', abs(f_intrinsic - fit.f), tol.class_tol * max(1.0, abs(fit.f)), u)
      det = max(abs(float(np.linalg.det(packet.h[c]))) for c in range(packet.m - packet.n))
      report.record('det A_xi', det, tol.det_tol, u)
    return report

  if max(tops) <= tol.proper_tol:
    report.note('case: axis normal to M')
    for u, packet, fit in zip(sample, packets, fits):
      along = FieldAlongM(imm, metric, field, u, tol)
      A = shape_operator(packet, packet.v_perp, tol)
      report.record('|A_Vperp + f Id|', float(np.linalg.norm(A + fit.f * np.eye(packet.n))), tol.umbilic_tol, u, f = fit.f)

      w = packet.tangent @ packet.G @ fit.W
      w_norm = float(np.linalg.norm(w))
      if w_norm <= tol.proper_tol:
        report.note('W is normal to M; D V_perp must vanish in every direction')
        D = max(packet.norm(along.normal_connection(packet.frame_coords[:, a])) for a in range(packet.n))
        report.record('|D_X V_perp|', D, tol.parallel_normal_tol, u)
        continue

      # Tangent directions orthogonal to W^T
      others = np.linalg.svd(w.reshape(1, -1))[2][1:]
      D = max([packet.norm(along.normal_connection(packet.frame_coords @ q)) for q in others] or [0.0])
      report.record('|D_X V_perp|, X orthogonal to W_top', D, tol.parallel_normal_tol, u)
      DW = along.normal_connection(packet.frame_coords @ w)
      report.record('|D_Wtop V_perp - |W_top|^2 V_perp|', packet.norm(DW - w_norm**2 * packet.v_perp),
                    tol.umbilic_tol, u, norm_W_top = w_norm)
    return report

  worst = int(np.argmax(np.minimum(tops, perps)))
  raise PreconditionError('axis is neither tangent nor normal to M', witness = sample[worst])
