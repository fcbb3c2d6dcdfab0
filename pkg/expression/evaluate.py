import math
from errors import DomainError
from expression.nodes import CONSTANTS, Binary, Call, Constant, Number, Unary, Variable, free_variables, to_text
from expression.parser import parse
from jet.jet import Jet, as_jet, seed_variables

# Float implementations raise DomainError instead of ValueError/ZeroDivisionError
def _sqrt(x):
  if x < 0.0:
    raise DomainError('sqrt of non-positive value {:g}'.format(x))
  return math.sqrt(x)

def _log(x):
  if x <= 0.0:
    raise DomainError('log of non-positive value {:g}'.format(x))
  return math.log(x)

def _atanh(x):
  if abs(x) >= 1.0:
    raise DomainError('atanh outside (-1, 1): {:g}'.format(x))
  return math.atanh(x)

def _div(a, b):
  if not isinstance(b, Jet) and b == 0.0:
    raise DomainError('division by zero')
  return a / b

def _pow(a, b):
  if isinstance(a, Jet) or isinstance(b, Jet):
    return a ** b
  if a < 0.0 and not float(b).is_integer():
    raise DomainError('non-integer power of non-positive value {:g}'.format(a))
  if a == 0.0 and b < 0.0:
    raise DomainError('division by zero')
  return math.pow(a, b)

FLOAT_FUNCTIONS = {
  'sin': math.sin, 'cos': math.cos, 'tan': math.tan,
  'sinh': math.sinh, 'cosh': math.cosh, 'tanh': math.tanh,
  'asinh': math.asinh, 'atanh': _atanh, 'atan': math.atan,
  'sqrt': _sqrt, 'exp': math.exp, 'log': _log, 'abs': abs,
}

def apply(name, args):
  if name == 'pow':
    return _pow(args[0], args[1])
  x = args[0]
  if isinstance(x, Jet):
    if name == 'abs':
      return abs(x)
    return getattr(x, name)()
  return FLOAT_FUNCTIONS[name](x)

BINARY = {
  '+': lambda a, b: a + b,
  '-': lambda a, b: a - b,
  '*': lambda a, b: a * b,
  '/': _div,
  '^': _pow,
}

def _attach(error, node):
  if error.subexpression is None:
    return DomainError(error.reason, to_text(node))
  return error

# Turn the tree into nested closures once; evaluation then walks no AST
def compile_node(node):
  if isinstance(node, Number):
    value = node.value
    return lambda env: value
  if isinstance(node, Constant):
    value = CONSTANTS[node.name]
    return lambda env: value
  if isinstance(node, Variable):
    name = node.name
    return lambda env: env[name]
  if isinstance(node, Unary):
    operand = compile_node(node.operand)
    return lambda env: -operand(env)
  if isinstance(node, Binary):
    op = BINARY[node.op]
    left, right = compile_node(node.left), compile_node(node.right)
    def binary(env):
      a, b = left(env), right(env)
      try:
        return op(a, b)
      except DomainError as e:
        raise _attach(e, node)
      except OverflowError:
        raise DomainError('overflow', to_text(node))
    return binary
  if isinstance(node, Call):
    args = [compile_node(a) for a in node.args]
    name = node.name
    def call(env):
      values = [a(env) for a in args]
      try:
        return apply(name, values)
      except DomainError as e:
        raise _attach(e, node)
      except (OverflowError, ValueError):
        raise DomainError('math range error', to_text(node))
    return call
  raise TypeError('not an expression node: {!r}'.format(node))

# Evaluates to a float, to a Jet at a point, or to a Jet of a composition with bound jets
class Expression:
  def __init__(self, source, variables):
    self.variables = list(variables)
    if isinstance(source, str):
      self.text = source
      self.root = parse(source, self.variables)
    else:
      self.root = source
      self.text = to_text(source)
    self.free = free_variables(self.root)
    self._fn = compile_node(self.root)

  def bind(self, point):
    return dict(zip(self.variables, point))

  def __call__(self, point):
    return float(self._fn(self.bind([float(x) for x in point])))

  # Evaluate with the variables bound to arbitrary values (floats or jets)
  def compose(self, values):
    return self._fn(self.bind(values))

  def jet(self, point, order):
    jets = seed_variables(point, order)
    return as_jet(self.compose(jets), len(jets), order)

  def is_constant(self):
    return not self.free

  def __str__(self):
    return self.text

  def __repr__(self):
    return 'Expression({!r})'.format(self.text)
