import numpy as np
from config import DEFAULTS
from errors import DegeneratePlaneError, OrderError, SingularMetricError
from jet.jet import MAX_ORDER, as_jet, seed_variables

# Taylor jet of a parsed expression at a point of its chart
def eval_jet(expr, point, order):
  if not 0 <= order <= MAX_ORDER:
    raise OrderError('jet order {} outside 0..{}'.format(order, MAX_ORDER))
  return expr.jet(point, order)

def _readonly(array):
  if array is not None:
    array.setflags(write = False)
  return array

# dg[i, j, k] = d_k g_ij and d2g[i, j, k, l] = d_l d_k g_ij
class MetricAtPoint:
  def __init__(self, point, g, dg = None, d2g = None):
    self.point = _readonly(np.array(point, dtype = float))
    self.g = _readonly(np.array(g, dtype = float))
    self.dg = _readonly(None if dg is None else np.array(dg, dtype = float))
    self.d2g = _readonly(None if d2g is None else np.array(d2g, dtype = float))
    self.dim = self.g.shape[0]
    self._cholesky = None
    self._inverse = None
    self._gamma = None

  @property
  def order(self):
    if self.d2g is not None:
      return 2
    return 1 if self.dg is not None else 0

  def cholesky(self, tol = DEFAULTS):
    if self._cholesky is None:
      try:
        L = np.linalg.cholesky(self.g)
      except np.linalg.LinAlgError:
        raise SingularMetricError('metric at {} is not positive definite'.format(list(self.point)))
      if np.min(np.diag(L))**2 <= tol.spd_tol:
        raise SingularMetricError('metric at {} has a Cholesky pivot below {:g}'.format(list(self.point), tol.spd_tol))
      self._cholesky = L
    return self._cholesky

  def inverse(self, tol = DEFAULTS):
    if self._inverse is None:
      Linv = np.linalg.inv(self.cholesky(tol))
      self._inverse = Linv.T @ Linv
    return self._inverse

  def inner(self, u, v):
    return float(np.asarray(u) @ self.g @ np.asarray(v))

  def norm(self, u):
    return float(np.sqrt(max(self.inner(u, u), 0.0)))

  # Covector g(v, .) of a vector, and the vector dual to a covector
  def lower(self, v):
    return self.g @ np.asarray(v)

  def raise_index(self, w, tol = DEFAULTS):
    return self.inverse(tol) @ np.asarray(w)

class VectorAtPoint:
  def __init__(self, components, jacobian = None):
    self.components = _readonly(np.array(components, dtype = float))
    self.jacobian = _readonly(None if jacobian is None else np.array(jacobian, dtype = float))

class MetricField:
  def __init__(self, entries, variables):
    self.variables = list(variables)
    self.dim = len(self.variables)
    self.entries = [[entries[max(i, j)][min(i, j)] for j in range(self.dim)] for i in range(self.dim)]

  # Jet matrix of the metric with the chart variables bound to the given values
  def compose(self, values):
    nvars, order = values[0].nvars, values[0].order
    cache = {}
    rows = []
    for i in range(self.dim):
      row = []
      for j in range(self.dim):
        key = (max(i, j), min(i, j))
        if key not in cache:
          cache[key] = as_jet(self.entries[key[0]][key[1]].compose(values), nvars, order)
        row.append(cache[key])
      rows.append(row)
    return rows

  def jets(self, point, order):
    return self.compose(seed_variables(point, order))

  def at(self, point, order = 2):
    jets = self.jets(point, order)
    return metric_from_jets(point, jets, order)

class VectorField:
  def __init__(self, components, variables):
    self.variables = list(variables)
    self.dim = len(self.variables)
    self.components = list(components)

  def compose(self, values):
    nvars, order = values[0].nvars, values[0].order
    return [as_jet(c.compose(values), nvars, order) for c in self.components]

  def jets(self, point, order):
    return self.compose(seed_variables(point, order))

  def at(self, point, order = 1):
    jets = self.jets(point, order)
    jacobian = np.array([j.gradient() for j in jets]) if order >= 1 else None
    return VectorAtPoint([j.value for j in jets], jacobian)

  def __call__(self, point):
    return np.array([c(point) for c in self.components])

def metric_from_jets(point, jets, order):
  n = len(jets)
  g = np.array([[jets[i][j].value for j in range(n)] for i in range(n)])
  dg = d2g = None
  if order >= 1:
    dg = np.array([[jets[i][j].gradient() for j in range(n)] for i in range(n)])
  if order >= 2:
    d2g = np.array([[jets[i][j].hessian() for j in range(n)] for i in range(n)])
  return MetricAtPoint(point, g, dg, d2g)

# Gamma[k, i, j] = 1/2 g^kl (d_i g_lj + d_j g_li - d_l g_ij)
def christoffel(metric, tol = DEFAULTS):
  if metric._gamma is not None:
    return metric._gamma
  if metric.dg is None:
    raise OrderError('Christoffel symbols need first derivatives of the metric')
  ginv = metric.inverse(tol)
  dg = metric.dg
  # lower[l, i, j] = d_i g_lj + d_j g_li - d_l g_ij
  lower = np.einsum('lji->lij', dg) + np.einsum('lij->lij', dg) - np.einsum('ijl->lij', dg)
  gamma = 0.5 * np.einsum('kl,lij->kij', ginv, lower)
  gamma = 0.5 * (gamma + np.swapaxes(gamma, 1, 2))
  metric._gamma = gamma
  return gamma

# dGamma[k, i, j, m] = d_m Gamma^k_ij
def christoffel_derivative(metric, tol = DEFAULTS):
  if metric.d2g is None:
    raise OrderError('curvature needs second derivatives of the metric')
  ginv = metric.inverse(tol)
  dg, d2g = metric.dg, metric.d2g
  lower = np.einsum('lji->lij', dg) + np.einsum('lij->lij', dg) - np.einsum('ijl->lij', dg)
  # d_m of the bracket: d_m d_i g_lj + d_m d_j g_li - d_m d_l g_ij
  dlower = (np.einsum('ljim->lijm', d2g) + np.einsum('lijm->lijm', d2g) - np.einsum('ijlm->lijm', d2g))
  dginv = -np.einsum('ka,abm,bl->klm', ginv, dg, ginv)
  return 0.5 * (np.einsum('klm,lij->kijm', dginv, lower) + np.einsum('kl,lijm->kijm', ginv, dlower))

# R[l, k, i, j] so that R(X, Y)Z = R[l, k, i, j] Z^k X^i Y^j
def riemann_tensor(metric, tol = DEFAULTS):
  gamma = christoffel(metric, tol)
  dgamma = christoffel_derivative(metric, tol)
  return (np.einsum('ljki->lkij', dgamma) - np.einsum('likj->lkij', dgamma)
          + np.einsum('pjk,lip->lkij', gamma, gamma) - np.einsum('pik,ljp->lkij', gamma, gamma))

def riemann(metric, X, Y, Z, tol = DEFAULTS):
  R = riemann_tensor(metric, tol)
  return np.einsum('lkij,k,i,j->l', R, np.asarray(Z, float), np.asarray(X, float), np.asarray(Y, float))

def covariant_derivative(metric, V, X, tol = DEFAULTS):
  if V.jacobian is None:
    raise OrderError('covariant derivative needs the jacobian of the field')
  X = np.asarray(X, dtype = float)
  gamma = christoffel(metric, tol)
  return V.jacobian @ X + np.einsum('kij,i,j->k', gamma, X, V.components)

def sectional_curvature(metric, u, v, tol = DEFAULTS):
  uu, vv, uv = metric.inner(u, u), metric.inner(v, v), metric.inner(u, v)
  denom = uu * vv - uv * uv
  if denom <= tol.degeneracy_tol * uu * vv:
    raise DegeneratePlaneError('vectors do not span a plane (Gram determinant {:.3e})'.format(denom))
  return metric.inner(riemann(metric, u, v, v, tol), u) / denom
