import json
import math
import textwrap3
import numpy as np
from constants import CheckStatus, LogLevel

def _number(x):
  x = float(x)
  if math.isnan(x) or math.isinf(x):
    return repr(x)
  return x

# Convert numpy values into plain JSON values
def plain(value):
  if isinstance(value, dict):
    return {str(k): plain(v) for k, v in value.items()}
  if isinstance(value, (list, tuple)):
    return [plain(v) for v in value]
  if isinstance(value, np.ndarray):
    return plain(value.tolist())
  if isinstance(value, (bool, np.bool_)):
    return bool(value)
  if isinstance(value, (int, np.integer)):
    return int(value)
  if isinstance(value, (float, np.floating)):
    return _number(value)
  if hasattr(value, 'value'):
    return value.value
  return value

class SampleReport:
  """
  Outcome of one check over a point sample.

  Each item keeps its limit and the worst value seen with the point where it
  occurred. The check passes when no item exceeds its limit.
  """
  def __init__(self, name):
    self.name = name
    self.items = {}
    self.notes = []
    self.records = []

  def record(self, item, value, limit, point, **values):
    value = float(value)
    entry = self.items.get(item)
    if entry is None or value > entry['worst'] or math.isnan(value):
      self.items[item] = {
        'limit': limit,
        'worst': value,
        'witness': {'point': plain(point), 'values': plain(values)},
      }

  def note(self, message):
    if message not in self.notes:
      self.notes.append(message)

  @property
  def passed(self):
    return all(e['worst'] <= e['limit'] for e in self.items.values())

  # Item with the largest value relative to its limit
  def worst_item(self):
    if not self.items:
      return None, None
    def ratio(kv):
      e = kv[1]
      return e['worst'] / e['limit'] if e['limit'] > 0.0 else e['worst']
    return max(self.items.items(), key = ratio)

  @property
  def residual(self):
    _, entry = self.worst_item()
    return None if entry is None else entry['worst']

  @property
  def witness(self):
    _, entry = self.worst_item()
    return None if entry is None else entry['witness']

class CheckResult:
  def __init__(self, name, status, residual = None, witness = None, message = '', details = None):
    self.name = name
    self.status = status
    self.residual = residual
    self.witness = witness
    self.message = message
    self.details = details or {}

  @classmethod
  def from_sample(cls, sample, message = ''):
    status = CheckStatus.PASS if sample.passed else CheckStatus.FAIL
    details = {k: {'limit': v['limit'], 'worst': v['worst']} for k, v in sample.items.items()}
    if sample.notes:
      details['notes'] = list(sample.notes)
    return cls(sample.name, status, sample.residual, sample.witness, message, details)

  def as_dict(self):
    return plain({
      'name': self.name,
      'status': self.status.value,
      'residual': self.residual,
      'witness': self.witness,
      'message': self.message,
      'details': self.details,
    })

class Report:
  def __init__(self, scene, seed, points):
    self.scene = scene
    self.seed = seed
    self.points = points
    self.checks = []
    self.classification = None
    self.log = None

  def add(self, result):
    self.checks.append(result)

  @property
  def passed(self):
    return all(c.status == CheckStatus.PASS for c in self.checks)

  def as_dict(self):
    return plain({
      'scene': self.scene,
      'seed': self.seed,
      'points': self.points,
      'checks': [c.as_dict() for c in self.checks],
      'classification': self.classification,
    })

  def to_json(self):
    return json.dumps(self.as_dict(), indent = 2, sort_keys = True)

  def render(self, width = 78):
    lines = ['scene: {}  (seed {}, {} points)'.format(self.scene, self.seed, self.points), '']
    header = '{:<22} {:<6} {:>10}  {}'.format('check', 'status', 'residual', 'witness')
    lines += [header, '-' * min(width, len(header) + 24)]
    for c in self.checks:
      residual = '-' if c.residual is None else '{:.2e}'.format(c.residual)
      point = ''
      if c.witness and c.witness.get('point') is not None:
        point = '(' + ', '.join('{:.3g}'.format(x) for x in c.witness['point']) + ')'
      lines.append('{:<22} {:<6} {:>10}  {}'.format(c.name, c.status.value, residual, point))
      if c.message:
        lines += textwrap3.wrap(c.message, width, initial_indent = '    ', subsequent_indent = '    ')

    if self.classification:
      lines += ['', 'classification: {}'.format(self.classification['verdict'])]
      f = self.classification.get('f_summary')
      if f:
        lines.append('  f in [{:.3e}, {:.3e}], mean {:.3e}'.format(f['min'], f['max'], f['mean']))
      for name, value in sorted(self.classification.get('residuals', {}).items()):
        lines.append('  {:<22} {:.2e}'.format(name, value))

    if self.log is not None:
      messages = self.log.lines(LogLevel.INFO)
      if messages:
        lines += ['', 'log:'] + ['  ' + m for m in messages]
    return '\n'.join(lines)
