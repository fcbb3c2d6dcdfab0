import math

# Named functions accepted in call syntax, with their arity
FUNCTIONS = {
  'sin': 1, 'cos': 1, 'tan': 1,
  'sinh': 1, 'cosh': 1, 'tanh': 1,
  'asinh': 1, 'atanh': 1, 'atan': 1,
  'sqrt': 1, 'exp': 1, 'log': 1, 'abs': 1,
  'pow': 2,
}

CONSTANTS = {'pi': math.pi}

# Binding power of each binary operator and its associativity
BINARY_PRECEDENCE = {'+': 1, '-': 1, '*': 2, '/': 2, '^': 4}
UNARY_PRECEDENCE = 3
RIGHT_ASSOCIATIVE = frozenset(['^'])

# Immutable expression tree
class Node:
  _fields = ()

  def __setattr__(self, name, value):
    if getattr(self, '_frozen', False):
      raise AttributeError('expression nodes are read-only')
    object.__setattr__(self, name, value)

  def _freeze(self):
    object.__setattr__(self, '_frozen', True)

  def __eq__(self, other):
    return type(self) is type(other) and all(getattr(self, f) == getattr(other, f) for f in self._fields)

  def __hash__(self):
    return hash((type(self).__name__,) + tuple(
      tuple(v) if isinstance(v, list) else v for v in (getattr(self, f) for f in self._fields)))

  def __repr__(self):
    return '{}({})'.format(type(self).__name__, ', '.join(repr(getattr(self, f)) for f in self._fields))

  def __str__(self):
    return to_text(self)

class Number(Node):
  _fields = ('value',)

  def __init__(self, value):
    self.value = float(value)
    self._freeze()

class Variable(Node):
  _fields = ('name',)

  def __init__(self, name):
    self.name = name
    self._freeze()

class Constant(Node):
  _fields = ('name',)

  def __init__(self, name):
    self.name = name
    self._freeze()

class Unary(Node):
  _fields = ('op', 'operand')

  def __init__(self, op, operand):
    self.op = op
    self.operand = operand
    self._freeze()

class Binary(Node):
  _fields = ('op', 'left', 'right')

  def __init__(self, op, left, right):
    self.op = op
    self.left = left
    self.right = right
    self._freeze()

class Call(Node):
  _fields = ('name', 'args')

  def __init__(self, name, args):
    self.name = name
    self.args = tuple(args)
    self._freeze()

# Print with just enough parentheses that parsing the text gives the same tree
def to_text(node, min_prec = 0):
  if isinstance(node, Number):
    text = repr(node.value)
    return '({})'.format(text) if node.value < 0 or text.startswith('-') else text
  if isinstance(node, (Variable, Constant)):
    return node.name
  if isinstance(node, Call):
    return '{}({})'.format(node.name, ', '.join(to_text(a) for a in node.args))
  if isinstance(node, Unary):
    text = '-' + to_text(node.operand, UNARY_PRECEDENCE)
    return '({})'.format(text) if min_prec > UNARY_PRECEDENCE else text
  prec = BINARY_PRECEDENCE[node.op]
  if node.op in RIGHT_ASSOCIATIVE:
    left = to_text(node.left, prec + 1)
    right = to_text(node.right, prec)
  else:
    left = to_text(node.left, prec)
    right = to_text(node.right, prec + 1)
  text = '{} {} {}'.format(left, node.op, right)
  return '({})'.format(text) if prec < min_prec else text

def free_variables(node):
  if isinstance(node, Variable):
    return {node.name}
  names = set()
  for field in node._fields:
    child = getattr(node, field)
    if isinstance(child, Node):
      names |= free_variables(child)
    elif isinstance(child, tuple):
      for c in child:
        names |= free_variables(c)
  return names
