import math
import numpy as np
import pytest
from errors import DomainError, OrderError
from expression.evaluate import Expression
from jet.jet import Jet, seed_variables, solve
from jet.kernel import eval_jet
from tests.oracles import richardson, richardson_gradient

EXPRESSIONS = [
  ('x*y + sin(x)', ['x', 'y']),
  ('exp(x) * cos(y) / (1 + x^2)', ['x', 'y']),
  ('sqrt(1 + x^2 + y^2) * tanh(x - y)', ['x', 'y']),
  ('log(2 + sin(x*y)) + atan(x) - asinh(y)', ['x', 'y']),
  ('cosh(x)^3 - sinh(y)^2 + tan(x/4)', ['x', 'y']),
  ('(1 + x^2)^(-1.5) * atanh(y/3)', ['x', 'y']),
  ('abs(x - 3) * pow(y^2 + 1, 0.5) + z', ['x', 'y', 'z']),
]

def test_constant_and_variable():
  x = Jet.variable(0, 2.0, 2, 3)
  c = Jet.constant(5.0, 2, 3)
  assert x.value == 2.0
  np.testing.assert_array_equal(x.gradient(), [1.0, 0.0])
  np.testing.assert_array_equal(c.gradient(), [0.0, 0.0])
  np.testing.assert_array_equal((x * c).gradient(), [5.0, 0.0])

def test_product_rule_to_third_order():
  x, y = seed_variables([1.5, -0.5], 3)
  f = x**3 * y
  assert f.derivative((3, 0)) == pytest.approx(6.0 * -0.5)
  assert f.derivative((2, 1)) == pytest.approx(6.0 * 1.5)
  assert f.derivative((1, 2)) == pytest.approx(0.0)
  np.testing.assert_allclose(f.hessian(), [[6.0 * 1.5 * -0.5, 3.0 * 1.5**2], [3.0 * 1.5**2, 0.0]])

def test_partial_matches_derivative():
  x, y = seed_variables([0.3, 0.7], 3)
  f = (x * y).sin() + x.exp()
  dx = f.partial(0)
  assert dx.order == 2
  assert dx.value == pytest.approx(f.derivative((1, 0)))
  assert dx.derivative((1, 0)) == pytest.approx(f.derivative((2, 0)))
  assert dx.derivative((0, 2)) == pytest.approx(f.derivative((1, 2)))

def test_truncate_keeps_low_coefficients():
  x, y = seed_variables([0.2, 0.1], 3)
  f = (x + 2.0 * y).cos()
  g = f.truncate(1)
  assert g.order == 1
  np.testing.assert_allclose(g.gradient(), f.gradient())
  with pytest.raises(ValueError):
    g.truncate(2)

@pytest.mark.parametrize("text, variables", EXPRESSIONS)
def test_gradient_matches_finite_differences(text, variables):
  expr = Expression(text, variables)
  rng = np.random.default_rng(7)
  for _ in range(100 // len(EXPRESSIONS) + 1):
    point = rng.uniform(0.2, 1.2, len(variables))
    jet = eval_jet(expr, point, 3)
    np.testing.assert_allclose(jet.gradient(), richardson_gradient(expr, point), rtol = 1e-6, atol = 1e-6)

@pytest.mark.parametrize("text, variables", EXPRESSIONS[:4])
def test_hessian_matches_finite_differences(text, variables):
  expr = Expression(text, variables)
  point = np.array([0.4, 0.9])
  hessian = eval_jet(expr, point, 2).hessian()
  for i in range(2):
    column = richardson(lambda p: eval_jet(expr, p, 1).gradient(), point, i)
    np.testing.assert_allclose(hessian[:, i], column, rtol = 1e-6, atol = 1e-6)

def test_third_derivative_of_exp_product():
  expr = Expression('exp(2*x) * y', ['x', 'y'])
  jet = eval_jet(expr, [0.5, 3.0], 3)
  assert jet.derivative((3, 0)) == pytest.approx(8.0 * math.exp(1.0) * 3.0)
  assert jet.derivative((2, 1)) == pytest.approx(4.0 * math.exp(1.0))

def test_order_above_three_is_rejected():
  with pytest.raises(OrderError):
    eval_jet(Expression('x', ['x']), [1.0], 4)

def test_domain_errors_name_the_subexpression():
  expr = Expression('1 + sqrt(x - 2)', ['x'])
  with pytest.raises(DomainError) as info:
    eval_jet(expr, [1.0], 1)
  assert 'sqrt' in str(info.value)
  with pytest.raises(DomainError):
    Expression('log(x)', ['x']).jet([0.0], 2)
  with pytest.raises(DomainError):
    Expression('1/x', ['x']).jet([0.0], 1)

def test_jet_solve():
  a, b = seed_variables([2.0, 1.0], 1)
  matrix = [[a, 1.0], [1.0, b + 2.0]]
  x = solve(matrix, [1.0, a])
  A = np.array([[2.0, 1.0], [1.0, 3.0]])
  expected = np.linalg.solve(A, [1.0, 2.0])
  assert x[0].value == pytest.approx(expected[0])
  assert x[1].value == pytest.approx(expected[1])

  # d/da of the solution from the implicit function theorem
  dA = np.array([[1.0, 0.0], [0.0, 0.0]])
  dx = np.linalg.solve(A, np.array([0.0, 1.0]) - dA @ expected)
  assert x[0].gradient()[0] == pytest.approx(dx[0])
  assert x[1].gradient()[0] == pytest.approx(dx[1])
