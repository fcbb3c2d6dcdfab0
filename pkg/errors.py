class RectifyError(Exception):
  pass


# Scene, schema and parse errors; the driver exits with status 2
class SceneError(RectifyError):
  pass

class ParseError(SceneError):
  def __init__(self, message, line = 1, column = 1, expected = None):
    self.line = line
    self.column = column
    self.expected = sorted(expected) if expected else []
    text = '{}:{}: {}'.format(line, column, message)
    if self.expected:
      text += ' (expected one of: {})'.format(', '.join(self.expected))
    super().__init__(text)

class SchemaError(SceneError):
  def __init__(self, message, path = None):
    self.path = list(path or [])
    where = '/'.join(str(p) for p in self.path) or '<root>'
    super().__init__('{}: {}'.format(where, message))

class DimensionError(SceneError):
  pass


# Numerical errors; uncaught ones make the driver exit with status 3
class NumericError(RectifyError):
  pass

class DomainError(NumericError):
  def __init__(self, message, subexpression = None):
    self.reason = message
    self.subexpression = subexpression
    if subexpression is not None:
      message = "{} in '{}'".format(message, subexpression)
    super().__init__(message)

class SingularMetricError(NumericError):
  pass

class OrderError(NumericError):
  pass

class DegeneratePlaneError(NumericError):
  pass

class RankDeficiencyError(NumericError):
  pass

class NonNormalError(NumericError):
  pass

class ZeroFieldError(NumericError):
  pass

class SingularFitError(NumericError):
  def __init__(self, message, condition = float('inf')):
    self.condition = condition
    super().__init__('{} (condition number {:.3e})'.format(message, condition))

class TooFewSamplesError(NumericError):
  pass

class ModelViolationError(NumericError):
  def __init__(self, message, witness = None):
    self.witness = witness
    super().__init__(message)

class VanishingFieldError(NumericError):
  pass

class NonPositiveWarpError(NumericError):
  pass


# Check-level outcomes that are not numerical failures
class PreconditionError(RectifyError):
  def __init__(self, message, witness = None):
    self.witness = witness
    super().__init__(message)

class InconsistentSampleError(RectifyError):
  def __init__(self, message, witness = None):
    self.witness = witness
    super().__init__(message)
