import numpy as np
from config import DEFAULTS
from errors import DimensionError, RankDeficiencyError
from jet.jet import as_jet, seed_variables
from jet.kernel import metric_from_jets

# One expression per ambient coordinate over a box of parameters
class Immersion:
  def __init__(self, components, variables, domain):
    self.components = list(components)
    self.variables = list(variables)
    self.n = len(self.variables)
    self.m = len(self.components)
    self.domain = np.array(domain, dtype = float)
    if not 1 <= self.n < self.m:
      raise DimensionError('immersion needs 1 <= n < m, got n={} m={}'.format(self.n, self.m))
    if self.domain.shape != (self.n, 2):
      raise DimensionError('parameter domain must have {} intervals'.format(self.n))

  def __call__(self, u):
    return np.array([c(u) for c in self.components])

  def compose(self, values):
    nvars, order = values[0].nvars, values[0].order
    return [as_jet(c.compose(values), nvars, order) for c in self.components]

  # Jets of the components in the parameters
  def jets(self, u, order = 3):
    return self.compose(seed_variables(u, order))

  def jacobian(self, u):
    return np.array([j.gradient() for j in self.jets(u, 1)])

  def contains(self, u):
    u = np.asarray(u, dtype = float)
    return bool(np.all(u >= self.domain[:, 0]) and np.all(u <= self.domain[:, 1]))

def check_rank(jacobian, u, tol = DEFAULTS):
  s = np.linalg.svd(jacobian, compute_uv = False)
  if s[0] == 0.0 or s[-1] <= tol.rank_tol * s[0]:
    raise RankDeficiencyError('immersion is degenerate at u={} (singular values {})'.format(
      list(np.round(u, 6)), ', '.join('{:.3e}'.format(x) for x in s)))

# Pullback g_ij = g~_ab(Psi) d_i Psi^a d_j Psi^b, as 2-jets in the parameters
def induced_metric(imm, metric, u, tol = DEFAULTS):
  psi = imm.jets(u, 3)
  n, m = imm.n, imm.m
  dpsi = [[psi[a].partial(i) for i in range(n)] for a in range(m)]
  check_rank(np.array([[d.value for d in row] for row in dpsi]), u, tol)
  ambient = metric.compose([p.truncate(2) for p in psi])

  g = [[None] * n for _ in range(n)]
  for i in range(n):
    for j in range(i, n):
      total = 0.0
      for a in range(m):
        for b in range(m):
          total = total + ambient[a][b] * dpsi[a][i] * dpsi[b][j]
      g[i][j] = g[j][i] = total
  return metric_from_jets(u, g, 2)
