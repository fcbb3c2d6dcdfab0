import jsonschema
import numpy as np
from config import Tolerances
from constants import CHECK_ORDER, DEFAULT_POINTS, DEFAULT_SEED, CURVE_LENGTH, CURVE_STEP, Verdict
from errors import DimensionError, ParseError, SchemaError
from expression.evaluate import Expression
from jet.kernel import MetricField, VectorField
from submanifold.immersion import Immersion

_interval = {'type': 'array', 'items': {'type': 'number'}, 'minItems': 2, 'maxItems': 2}
_names = {'type': 'array', 'items': {'type': 'string', 'pattern': '^[A-Za-z_][A-Za-z0-9_]*$'}}

SCENE_SCHEMA = {
  '$schema': 'http://json-schema.org/draft-07/schema#',
  'type': 'object',
  'required': ['name', 'ambient', 'checks'],
  'anyOf': [{'required': ['field']}, {'required': ['submanifold']}],
  'additionalProperties': False,
  'properties': {
    'name': {'type': 'string', 'minLength': 1},
    'description': {'type': 'string'},
    'ambient': {
      'type': 'object',
      'required': ['dim', 'metric', 'domain'],
      'additionalProperties': False,
      'properties': {
        'dim': {'type': 'integer', 'minimum': 1},
        'variables': _names,
        'metric': {'type': 'array', 'items': {'type': 'array', 'items': {'type': 'string'}}},
        'domain': {'type': 'array', 'items': _interval},
        'exclude': {
          'type': 'array',
          'items': {
            'type': 'object',
            'required': ['center', 'radius'],
            'additionalProperties': False,
            'properties': {
              'center': {'type': 'array', 'items': {'type': 'number'}},
              'radius': {'type': 'number', 'exclusiveMinimum': 0},
            },
          },
        },
      },
    },
    'field': {'type': 'array', 'items': {'type': 'string'}},
    'submanifold': {
      'type': 'object',
      'required': ['dim', 'immersion', 'domain'],
      'additionalProperties': False,
      'properties': {
        'dim': {'type': 'integer', 'minimum': 1},
        'variables': _names,
        'immersion': {'type': 'array', 'items': {'type': 'string'}},
        'domain': {'type': 'array', 'items': _interval},
        'curves': {
          'type': 'array',
          'items': {
            'type': 'object',
            'required': ['start'],
            'additionalProperties': False,
            'properties': {
              'start': {'type': 'array', 'items': {'type': 'number'}},
              'length': {'type': 'number', 'exclusiveMinimum': 0},
              'step': {'type': 'number', 'exclusiveMinimum': 0},
            },
          },
        },
      },
    },
    'checks': {'type': 'array', 'items': {'enum': [c.value for c in CHECK_ORDER]}, 'uniqueItems': True},
    'expect': {
      'type': 'object',
      'additionalProperties': False,
      'properties': {'verdict': {'enum': [v.value for v in Verdict]}},
    },
    'seed': {'type': 'integer', 'minimum': 0},
    'points': {'type': 'integer', 'minimum': 1},
    'tolerances': {'type': 'object', 'additionalProperties': {'type': 'number'}},
  },
}

# Metric, box domain minus excluded balls, optional field
class AmbientScene:
  def __init__(self, metric, domain, field = None, name = '', exclude = None):
    self.name = name
    self.metric = metric
    self.field = field
    self.variables = metric.variables
    self.dim = metric.dim
    self.domain = np.array(domain, dtype = float)
    self.exclude = [(np.array(e['center'], dtype = float), float(e['radius'])) for e in (exclude or [])]
    self.warping = None

  def contains(self, x):
    x = np.asarray(x, dtype = float)
    if np.any(x < self.domain[:, 0]) or np.any(x > self.domain[:, 1]):
      return False
    return all(np.linalg.norm(x - c) >= r for c, r in self.exclude)

class Curve:
  def __init__(self, start, length = CURVE_LENGTH, step = CURVE_STEP):
    self.start = np.array(start, dtype = float)
    self.length = float(length)
    self.step = float(step)

class Scene:
  def __init__(self, name, ambient, immersion = None, checks = None, seed = DEFAULT_SEED,
               points = DEFAULT_POINTS, tolerances = None, curves = None, expect = None, document = None):
    self.name = name
    self.ambient = ambient
    self.immersion = immersion
    self.checks = list(checks or [])
    self.seed = seed
    self.points = points
    self.tolerances = tolerances or Tolerances()
    self.curves = list(curves or [])
    self.expect = expect or {}
    self.document = document

  @property
  def metric(self):
    return self.ambient.metric

  @property
  def field(self):
    return self.ambient.field

def _validate(document):
  validator = jsonschema.Draft7Validator(SCENE_SCHEMA)
  errors = sorted(validator.iter_errors(document), key = lambda e: (len(e.path), list(map(str, e.path))))
  if errors:
    error = errors[0]
    raise SchemaError(error.message, path = list(error.absolute_path))

def _parse(text, variables, path):
  try:
    return Expression(text, variables)
  except ParseError as e:
    e.path = path
    raise

# Full symmetric matrix from either a full or a lower-triangular listing
def _metric_entries(rows, m):
  if len(rows) != m:
    raise DimensionError('metric has {} rows but the ambient dimension is {}'.format(len(rows), m))
  lower = all(len(row) == i + 1 for i, row in enumerate(rows))
  full = all(len(row) == m for row in rows)
  if not (lower or full):
    raise DimensionError('metric rows must list the lower triangle or all {} entries'.format(m))
  return [[rows[max(i, j)][min(i, j)] for j in range(m)] for i in range(m)]

def load_scene(document):
  _validate(document)
  ambient_doc = document['ambient']
  m = ambient_doc['dim']
  variables = ambient_doc.get('variables') or ['x{}'.format(i + 1) for i in range(m)]
  if len(variables) != m:
    raise DimensionError('ambient declares {} variables for dimension {}'.format(len(variables), m))
  if len(ambient_doc['domain']) != m:
    raise DimensionError('ambient domain has {} intervals for dimension {}'.format(len(ambient_doc['domain']), m))
  for e in ambient_doc.get('exclude', []):
    if len(e['center']) != m:
      raise DimensionError('excluded ball center must have {} coordinates'.format(m))

  entries = _metric_entries(ambient_doc['metric'], m)
  parsed = [[_parse(entries[i][j], variables, ['ambient', 'metric', max(i, j), min(i, j)]) for j in range(m)] for i in range(m)]
  metric = MetricField(parsed, variables)

  field = None
  if 'field' in document:
    if len(document['field']) != m:
      raise DimensionError('field has {} components for dimension {}'.format(len(document['field']), m))
    field = VectorField([_parse(c, variables, ['field', k]) for k, c in enumerate(document['field'])], variables)

  ambient = AmbientScene(metric, ambient_doc['domain'], field, document['name'], ambient_doc.get('exclude'))

  immersion = None
  curves = []
  sub = document.get('submanifold')
  if sub is not None:
    n = sub['dim']
    names = sub.get('variables') or ['u{}'.format(i + 1) for i in range(n)]
    if len(names) != n:
      raise DimensionError('submanifold declares {} variables for dimension {}'.format(len(names), n))
    if n >= m:
      raise DimensionError('submanifold dimension {} must be below the ambient dimension {}'.format(n, m))
    if len(sub['immersion']) != m:
      raise DimensionError('immersion has {} components for ambient dimension {}'.format(len(sub['immersion']), m))
    if len(sub['domain']) != n:
      raise DimensionError('parameter domain has {} intervals for dimension {}'.format(len(sub['domain']), n))
    components = [_parse(c, names, ['submanifold', 'immersion', k]) for k, c in enumerate(sub['immersion'])]
    immersion = Immersion(components, names, sub['domain'])
    for c in sub.get('curves', []):
      if len(c['start']) != n:
        raise DimensionError('curve start must have {} coordinates'.format(n))
      curves.append(Curve(c['start'], c.get('length', CURVE_LENGTH), c.get('step', CURVE_STEP)))
    if not curves:
      curves.append(Curve(immersion.domain.mean(axis = 1)))

  tolerances = Tolerances(document.get('tolerances'))
  expect = dict(document.get('expect', {}))
  if 'verdict' in expect:
    expect['verdict'] = Verdict(expect['verdict'])
  return Scene(document['name'], ambient, immersion, document['checks'], document.get('seed', DEFAULT_SEED),
               document.get('points', DEFAULT_POINTS), tolerances, curves, expect, document)
