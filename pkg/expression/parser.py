from errors import ParseError
from expression.nodes import (
  BINARY_PRECEDENCE, CONSTANTS, FUNCTIONS, RIGHT_ASSOCIATIVE, UNARY_PRECEDENCE,
  Binary, Call, Constant, Number, Unary, Variable,
)

OPERAND_START = {'number', 'identifier', "'('", "'-'"}

class Token:
  def __init__(self, kind, text, line, column):
    self.kind = kind
    self.text = text
    self.line = line
    self.column = column

  def __repr__(self):
    return 'Token({!r}, {!r}, {}:{})'.format(self.kind, self.text, self.line, self.column)

# Turn an input string into a list of tokens, each tagged with line:column
def tokenize(source):
  tokens = []
  idx = 0
  line, column = 1, 1

  def error(message, expected = None):
    raise ParseError(message, line, column, expected)

  while idx < len(source):
    c = source[idx]
    if c == '\n':
      idx += 1
      line += 1
      column = 1
      continue
    if c.isspace():
      idx += 1
      column += 1
      continue
    start = idx
    if c.isdigit() or (c == '.' and idx + 1 < len(source) and source[idx + 1].isdigit()):
      while idx < len(source) and (source[idx].isdigit() or source[idx] == '.'):
        idx += 1
      # Exponent part, e.g. 1.5e-3
      if idx < len(source) and source[idx] in 'eE':
        ahead = idx + 1
        if ahead < len(source) and source[ahead] in '+-':
          ahead += 1
        if ahead < len(source) and source[ahead].isdigit():
          idx = ahead
          while idx < len(source) and source[idx].isdigit():
            idx += 1
      text = source[start:idx]
      try:
        float(text)
      except ValueError:
        error("malformed number '{}'".format(text), {'number'})
      tokens.append(Token('number', text, line, column))
    elif c.isalpha() or c == '_':
      while idx < len(source) and (source[idx].isalnum() or source[idx] == '_'):
        idx += 1
      tokens.append(Token('identifier', source[start:idx], line, column))
    elif c in '+-*/^(),':
      idx += 1
      tokens.append(Token(c, c, line, column))
    else:
      error("unexpected character '{}'".format(c))
    column += idx - start
  tokens.append(Token('end', '', line, column))
  return tokens

# Precedence climbing; ^ is right-associative and binds tighter than unary minus
class Parser:
  def __init__(self, source, variables = None):
    self.source = source
    self.variables = None if variables is None else set(variables)
    self.tokens = tokenize(source)
    self.pos = 0

  def peek(self):
    return self.tokens[self.pos]

  def advance(self):
    token = self.tokens[self.pos]
    self.pos += 1
    return token

  def error(self, token, message, expected):
    raise ParseError(message, token.line, token.column, expected)

  def expect(self, kind):
    token = self.advance()
    if token.kind != kind:
      self.error(token, "unexpected {}".format(_describe(token)), {"'{}'".format(kind)})
    return token

  def parse(self):
    node = self.expression(0)
    token = self.peek()
    if token.kind != 'end':
      expected = {"'{}'".format(op) for op in BINARY_PRECEDENCE} | {'end of input'}
      self.error(token, 'unexpected {}'.format(_describe(token)), expected)
    return node

  def expression(self, min_prec):
    lhs = self.operand()
    while True:
      token = self.peek()
      prec = BINARY_PRECEDENCE.get(token.kind)
      if prec is None or prec < min_prec:
        return lhs
      self.advance()
      next_prec = prec if token.kind in RIGHT_ASSOCIATIVE else prec + 1
      # The exponent may itself start with a unary minus
      if token.kind == '^':
        rhs = self.unary_or(next_prec)
      else:
        rhs = self.expression(next_prec)
      lhs = Binary(token.kind, lhs, rhs)

  def unary_or(self, prec):
    if self.peek().kind == '-':
      self.advance()
      return Unary('-', self.expression(UNARY_PRECEDENCE + 1))
    return self.expression(prec)

  def operand(self):
    token = self.advance()
    if token.kind == '-':
      return Unary('-', self.expression(UNARY_PRECEDENCE + 1))
    if token.kind == 'number':
      return Number(float(token.text))
    if token.kind == '(':
      node = self.expression(0)
      self.expect(')')
      return node
    if token.kind == 'identifier':
      return self.identifier(token)
    self.error(token, 'unexpected {}'.format(_describe(token)), OPERAND_START)

  def identifier(self, token):
    name = token.text
    if self.peek().kind == '(':
      if name not in FUNCTIONS:
        self.error(token, "unknown function '{}'".format(name), set(FUNCTIONS))
      self.advance()
      args = [self.expression(0)]
      while self.peek().kind == ',':
        self.advance()
        args.append(self.expression(0))
      self.expect(')')
      if len(args) != FUNCTIONS[name]:
        self.error(token, "'{}' takes {} argument(s), got {}".format(name, FUNCTIONS[name], len(args)), None)
      return Call(name, args)
    if name in CONSTANTS:
      return Constant(name)
    if self.variables is not None and name not in self.variables:
      self.error(token, "unknown identifier '{}'".format(name), set(self.variables) | set(CONSTANTS))
    return Variable(name)

def _describe(token):
  if token.kind == 'end':
    return 'end of input'
  return "'{}'".format(token.text)

def parse(text, variables = None):
  return Parser(text, variables).parse()
