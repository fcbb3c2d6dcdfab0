import math
import numpy as np
from scipy import integrate
from config import DEFAULTS
from errors import ModelViolationError, TooFewSamplesError, VanishingFieldError
from field.classifier import fit_torse_forming
from jet.jet import values

# Arc-length samples of an integral curve of E1 = V^T / |V^T| with lam = |V^T|
class IntegralCurve:
  def __init__(self, step):
    self.step = step
    self.s = []
    self.u = []
    self.lam = []
    self.f = []
    self.speed_defect = 0.0
    self.evaluations = 0
    self.exited = False
    self.exit_reason = ''

  @classmethod
  def from_samples(cls, s, lam, f, u = None):
    curve = cls(float(s[1] - s[0]))
    curve.s = [float(x) for x in s]
    curve.lam = [float(x) for x in lam]
    curve.f = [float(x) for x in f]
    curve.u = [np.zeros(1) for _ in s] if u is None else [np.asarray(x, float) for x in u]
    return curve

  def append(self, s, u, lam, f):
    self.s.append(float(s))
    self.u.append(np.array(u, dtype = float))
    self.lam.append(float(lam))
    self.f.append(float(f))

  def __len__(self):
    return len(self.s)

class _Direction:
  def __init__(self, imm, metric, field, tol):
    self.imm = imm
    self.metric = metric
    self.field = field
    self.tol = tol
    self.evaluations = 0

  # Returns (E1 in parameter components, |V^T|, ambient point, |d Psi(E1)|)
  def __call__(self, u):
    self.evaluations += 1
    psi = self.imm.jets(u, 1)
    point = values(psi)
    J = np.array([p.gradient() for p in psi])
    G = self.metric.at(point, order = 0).g
    V = self.field(point)
    g = J.T @ G @ J
    v = np.linalg.solve(g, J.T @ G @ V)
    lam = float(np.sqrt(max(v @ g @ v, 0.0)))
    if lam <= self.tol.proper_tol:
      raise VanishingFieldError('tangential part of the axis vanishes at u={}'.format(list(np.round(u, 6))))
    e1 = v / lam
    speed = float(np.sqrt(max((J @ e1) @ G @ (J @ e1), 0.0)))
    return e1, lam, point, speed

# Classical RK4 on du/ds = E1(u); leaving the parameter box ends the curve
def trace_integral_curve(imm, metric, field, u0, length, step, tol = DEFAULTS):
  direction = _Direction(imm, metric, field, tol)
  curve = IntegralCurve(step)
  u = np.array(u0, dtype = float)
  steps = int(round(length / step))

  def sample(s, u):
    e1, lam, point, speed = direction(u)
    f = fit_torse_forming(metric, field, point, tol).f
    curve.append(s, u, lam, f)
    curve.speed_defect = max(curve.speed_defect, abs(speed - 1.0))

  sample(0.0, u)
  for k in range(steps):
    k1 = direction(u)[0]
    k2 = direction(u + 0.5 * step * k1)[0]
    k3 = direction(u + 0.5 * step * k2)[0]
    k4 = direction(u + step * k3)[0]
    nxt = u + step * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0
    if not imm.contains(nxt):
      curve.exited = True
      curve.exit_reason = 'left the parameter domain at s={:.4g}'.format((k + 1) * step)
      break
    u = nxt
    sample((k + 1) * step, u)
  curve.evaluations = direction.evaluations
  return curve

# Fourth-order central differences on a uniform grid, interior samples only
def _derivative(y, h):
  y = np.asarray(y, dtype = float)
  return (-y[4:] + 8.0 * y[3:-1] - 8.0 * y[1:-3] + y[:-4]) / (12.0 * h)

# max |d lam/ds - f (1 - lam^2)| over the interior samples, and its index
def warping_ode_residual(curve):
  if len(curve) < 5:
    raise TooFewSamplesError('the warping equation needs 5 samples, got {}'.format(len(curve)))
  lam = np.asarray(curve.lam)
  f = np.asarray(curve.f)
  dlam = _derivative(lam, curve.step)
  residual = np.abs(dlam - f[2:-2] * (1.0 - lam[2:-2]**2))
  worst = int(np.argmax(residual))
  return float(residual[worst]), worst + 2

class WarpFit:
  def __init__(self, C, s, integral, model, lam):
    self.C = C
    self.s = np.asarray(s)
    self.integral = integral
    self.model = model
    self.deviations = np.abs(np.asarray(lam) - model)
    self.worst = int(np.argmax(self.deviations))
    self.deviation = float(self.deviations[self.worst])

# lam(s) = tanh(int^s f + C) with C fixed at the curve midpoint
def fit_tanh_integral(curve):
  lam = np.asarray(curve.lam)
  outside = np.flatnonzero(np.abs(lam) >= 1.0)
  if outside.size:
    k = int(outside[0])
    raise ModelViolationError('lam = {:.6g} at s = {:.4g} is outside the range of tanh'.format(lam[k], curve.s[k]),
                              witness = {'point': list(curve.u[k]), 'values': {'s': curve.s[k], 'lam': float(lam[k])}})
  F = integrate.cumulative_simpson(np.asarray(curve.f), dx = curve.step, initial = 0.0)
  mid = len(lam) // 2
  C = math.atanh(lam[mid]) - F[mid]
  model = np.tanh(F + C)
  return WarpFit(C, curve.s, F, model, lam)
