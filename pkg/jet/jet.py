import functools
import itertools
import math
import numpy as np
from errors import DomainError

MAX_ORDER = 3

# All multi-indices of nvars variables with total degree <= order, graded
def _multi_indices(nvars, order):
  indices = []
  for degree in range(order + 1):
    for combo in itertools.combinations_with_replacement(range(nvars), degree):
      alpha = [0] * nvars
      for i in combo:
        alpha[i] += 1
      indices.append(tuple(alpha))
  return indices

# Monomial bookkeeping; the product table lists the pairs surviving truncation
class Basis:
  def __init__(self, nvars, order):
    self.nvars = nvars
    self.order = order
    self.indices = _multi_indices(nvars, order)
    self.size = len(self.indices)
    self.position = {alpha: k for k, alpha in enumerate(self.indices)}
    self.degree = np.array([sum(alpha) for alpha in self.indices])
    self.factorials = np.array([float(np.prod([math.factorial(a) for a in alpha])) for alpha in self.indices])

    left, right, target = [], [], []
    for a, alpha in enumerate(self.indices):
      for b, beta in enumerate(self.indices):
        gamma = tuple(x + y for x, y in zip(alpha, beta))
        if sum(gamma) <= order:
          left.append(a)
          right.append(b)
          target.append(self.position[gamma])
    self.mul_left = np.array(left, dtype = int)
    self.mul_right = np.array(right, dtype = int)
    self.mul_target = np.array(target, dtype = int)

  # Source/target positions and weights for d/dx_i, landing in the basis of order - 1
  @functools.lru_cache(maxsize = None)
  def partial_table(self, i):
    lower = basis(self.nvars, self.order - 1)
    src, dst, weight = [], [], []
    for k, alpha in enumerate(self.indices):
      if alpha[i] > 0:
        beta = list(alpha)
        beta[i] -= 1
        src.append(k)
        dst.append(lower.position[tuple(beta)])
        weight.append(float(alpha[i]))
    return np.array(src, dtype = int), np.array(dst, dtype = int), np.array(weight)

  # Positions of this basis inside a higher-order basis of the same nvars
  @functools.lru_cache(maxsize = None)
  def embedding(self, order):
    lower = basis(self.nvars, order)
    return np.array([self.position[alpha] for alpha in lower.indices], dtype = int)

@functools.lru_cache(maxsize = None)
def basis(nvars, order):
  if nvars < 1:
    raise ValueError('a jet needs at least one variable')
  if not 0 <= order <= MAX_ORDER:
    raise ValueError('jet order must lie in 0..{}'.format(MAX_ORDER))
  return Basis(nvars, order)

class Jet:
  """
  Truncated multivariate Taylor expansion of a scalar at a point.

  coeffs[k] is the Taylor coefficient of the monomial basis.indices[k], i.e.
  the partial derivative divided by the multi-index factorial.
  """
  # Let numpy scalars defer to the reflected Jet operators
  __array_ufunc__ = None

  def __init__(self, nvars, order, coeffs = None):
    self.basis = basis(nvars, order)
    if coeffs is None:
      coeffs = np.zeros(self.basis.size)
    self.coeffs = np.asarray(coeffs, dtype = float)

  @classmethod
  def constant(cls, value, nvars, order):
    jet = cls(nvars, order)
    jet.coeffs[0] = value
    return jet

  @classmethod
  def variable(cls, index, value, nvars, order):
    jet = cls.constant(value, nvars, order)
    if order > 0:
      alpha = [0] * nvars
      alpha[index] = 1
      jet.coeffs[jet.basis.position[tuple(alpha)]] = 1.0
    return jet

  @property
  def nvars(self):
    return self.basis.nvars

  @property
  def order(self):
    return self.basis.order

  @property
  def value(self):
    return float(self.coeffs[0])

  # Exact partial derivative for the multi-index alpha
  def derivative(self, alpha):
    k = self.basis.position[tuple(alpha)]
    return float(self.coeffs[k] * self.basis.factorials[k])

  def gradient(self):
    grad = np.zeros(self.nvars)
    if self.order < 1:
      return grad
    for i in range(self.nvars):
      alpha = [0] * self.nvars
      alpha[i] = 1
      grad[i] = self.derivative(alpha)
    return grad

  def hessian(self):
    hess = np.zeros((self.nvars, self.nvars))
    if self.order < 2:
      return hess
    for i in range(self.nvars):
      for j in range(i, self.nvars):
        alpha = [0] * self.nvars
        alpha[i] += 1
        alpha[j] += 1
        hess[i, j] = hess[j, i] = self.derivative(alpha)
    return hess

  def truncate(self, order):
    if order > self.order:
      raise ValueError('cannot raise the order of a jet')
    if order == self.order:
      return self
    return Jet(self.nvars, order, self.coeffs[self.basis.embedding(order)])

  # Jet of d/dx_i, one order lower
  def partial(self, i):
    if self.order == 0:
      raise ValueError('cannot differentiate an order-0 jet')
    src, dst, weight = self.basis.partial_table(i)
    lower = basis(self.nvars, self.order - 1)
    coeffs = np.zeros(lower.size)
    np.add.at(coeffs, dst, self.coeffs[src] * weight)
    return Jet(self.nvars, self.order - 1, coeffs)

  def _coerce(self, other):
    if isinstance(other, Jet):
      if other.basis is not self.basis:
        raise ValueError('jets of different shape: ({}, {}) vs ({}, {})'.format(
          self.nvars, self.order, other.nvars, other.order))
      return other
    return Jet.constant(float(other), self.nvars, self.order)

  def __add__(self, other):
    if not isinstance(other, Jet):
      coeffs = self.coeffs.copy()
      coeffs[0] += float(other)
      return Jet(self.nvars, self.order, coeffs)
    return Jet(self.nvars, self.order, self.coeffs + self._coerce(other).coeffs)

  def __radd__(self, other):
    return self.__add__(other)

  def __neg__(self):
    return Jet(self.nvars, self.order, -self.coeffs)

  def __pos__(self):
    return self

  def __sub__(self, other):
    return self.__add__(-other)

  def __rsub__(self, other):
    return (-self).__add__(other)

  def __mul__(self, other):
    if not isinstance(other, Jet):
      return Jet(self.nvars, self.order, self.coeffs * float(other))
    other = self._coerce(other)
    b = self.basis
    weights = self.coeffs[b.mul_left] * other.coeffs[b.mul_right]
    return Jet(self.nvars, self.order, np.bincount(b.mul_target, weights = weights, minlength = b.size))

  def __rmul__(self, other):
    return self.__mul__(other)

  def __truediv__(self, other):
    if not isinstance(other, Jet):
      other = float(other)
      if other == 0.0:
        raise DomainError('division by zero')
      return Jet(self.nvars, self.order, self.coeffs / other)
    return self * self._coerce(other).reciprocal()

  def __rtruediv__(self, other):
    return self.reciprocal() * float(other)

  def __pow__(self, power):
    if isinstance(power, Jet):
      if not np.any(power.coeffs[1:]):
        return self.__pow__(power.value)
      return (power * self.log()).exp()
    power = float(power)
    if power.is_integer():
      return self._integer_power(int(power))
    x = self.value
    if x < 0.0 or (x == 0.0 and (power < 0.0 or self.order > 0)):
      raise DomainError('non-integer power of non-positive value {:g}'.format(x))
    return self.compose(_power_derivatives(x, power, self.order))

  def __rpow__(self, base):
    base = float(base)
    if base <= 0.0:
      raise DomainError('power of non-positive base {:g}'.format(base))
    return (self * math.log(base)).exp()

  def _integer_power(self, n):
    if n < 0:
      return self._integer_power(-n).reciprocal()
    result = Jet.constant(1.0, self.nvars, self.order)
    square = self
    while n:
      if n & 1:
        result = result * square
      n >>= 1
      if n:
        square = square * square
    return result

  # f(self) from the derivatives [f(x0), f'(x0), f''(x0), f'''(x0)]
  def compose(self, derivs):
    delta = Jet(self.nvars, self.order, self.coeffs.copy())
    delta.coeffs[0] = 0.0
    result = Jet.constant(derivs[0], self.nvars, self.order)
    power = None
    for k in range(1, self.order + 1):
      power = delta if power is None else power * delta
      result = result + power * (derivs[k] / math.factorial(k))
    return result

  def reciprocal(self):
    x = self.value
    if x == 0.0:
      raise DomainError('division by zero')
    return self.compose([1.0 / x, -1.0 / x**2, 2.0 / x**3, -6.0 / x**4])

  def sqrt(self):
    x = self.value
    if x < 0.0 or (x == 0.0 and self.order > 0):
      raise DomainError('sqrt of non-positive value {:g}'.format(x))
    return self.compose(_power_derivatives(x, 0.5, self.order))

  def exp(self):
    e = math.exp(self.value)
    return self.compose([e, e, e, e])

  def log(self):
    x = self.value
    if x <= 0.0:
      raise DomainError('log of non-positive value {:g}'.format(x))
    return self.compose([math.log(x), 1.0 / x, -1.0 / x**2, 2.0 / x**3])

  def sin(self):
    s, c = math.sin(self.value), math.cos(self.value)
    return self.compose([s, c, -s, -c])

  def cos(self):
    s, c = math.sin(self.value), math.cos(self.value)
    return self.compose([c, -s, -c, s])

  def tan(self):
    x = self.value
    if math.cos(x) == 0.0:
      raise DomainError('tan at a pole')
    t = math.tan(x)
    sec2 = 1.0 + t * t
    return self.compose([t, sec2, 2.0 * t * sec2, 2.0 * sec2 * (1.0 + 3.0 * t * t)])

  def sinh(self):
    sh, ch = math.sinh(self.value), math.cosh(self.value)
    return self.compose([sh, ch, sh, ch])

  def cosh(self):
    sh, ch = math.sinh(self.value), math.cosh(self.value)
    return self.compose([ch, sh, ch, sh])

  def tanh(self):
    t = math.tanh(self.value)
    sech2 = 1.0 - t * t
    return self.compose([t, sech2, -2.0 * t * sech2, sech2 * (6.0 * t * t - 2.0)])

  def asinh(self):
    x = self.value
    q = 1.0 + x * x
    return self.compose([math.asinh(x), q**-0.5, -x * q**-1.5, (2.0 * x * x - 1.0) * q**-2.5])

  def atanh(self):
    x = self.value
    if abs(x) >= 1.0:
      raise DomainError('atanh outside (-1, 1): {:g}'.format(x))
    q = 1.0 - x * x
    return self.compose([math.atanh(x), 1.0 / q, 2.0 * x / q**2, (2.0 + 6.0 * x * x) / q**3])

  def atan(self):
    x = self.value
    q = 1.0 + x * x
    return self.compose([math.atan(x), 1.0 / q, -2.0 * x / q**2, (6.0 * x * x - 2.0) / q**3])

  def __abs__(self):
    x = self.value
    if x == 0.0 and self.order > 0:
      raise DomainError('abs is not differentiable at 0')
    sign = 1.0 if x >= 0.0 else -1.0
    return self * sign

  def __repr__(self):
    return 'Jet(nvars={}, order={}, value={!r})'.format(self.nvars, self.order, self.value)

def _power_derivatives(x, p, order):
  derivs = [x**p, 0.0, 0.0, 0.0]
  factor = 1.0
  for k in range(1, order + 1):
    factor *= p - (k - 1)
    derivs[k] = factor * x**(p - k)
  return derivs

# Jet-valued helpers used by the geometry modules
def as_jet(value, nvars, order):
  if isinstance(value, Jet):
    return value
  return Jet.constant(float(value), nvars, order)

def seed_variables(point, order):
  point = [float(x) for x in point]
  return [Jet.variable(i, x, len(point), order) for i, x in enumerate(point)]

def values(jets):
  return np.array([j.value for j in jets])

# Solve A x = b with jet entries; A symmetric positive definite, no pivoting
def solve(matrix, rhs):
  n = len(rhs)
  a = [list(row) for row in matrix]
  b = list(rhs)
  for k in range(n):
    inv = 1.0 / a[k][k] if not isinstance(a[k][k], Jet) else a[k][k].reciprocal()
    for i in range(k + 1, n):
      factor = a[i][k] * inv
      for j in range(k, n):
        a[i][j] = a[i][j] - factor * a[k][j]
      b[i] = b[i] - factor * b[k]
  x = [None] * n
  for i in reversed(range(n)):
    acc = b[i]
    for j in range(i + 1, n):
      acc = acc - a[i][j] * x[j]
    x[i] = acc / a[i][i]
  return x
