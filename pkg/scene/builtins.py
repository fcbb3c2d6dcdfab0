import copy
from errors import SchemaError

TWO_PI = 6.283185307179586

def euclidean(m):
  return [['1' if i == j else '0' for j in range(i + 1)] for i in range(m)]

def radial(m, names = None):
  names = names or ['x{}'.format(i + 1) for i in range(m)]
  norm = 'sqrt({})'.format(' + '.join('{}^2'.format(x) for x in names))
  return ['{}/{}'.format(x, norm) for x in names]

def euclidean_ambient(m, half_width, hole = 0.1):
  return {
    'dim': m,
    'metric': euclidean(m),
    'domain': [[-half_width, half_width]] * m,
    'exclude': [{'center': [0.0] * m, 'radius': hole}],
  }

# ds^2 + lam(s)^2 (dy1^2 + ... ), the field d/ds
def warped_document(name, lam, fiber_dim = 2, s_interval = (0.0, 1.0), description = ''):
  m = fiber_dim + 1
  metric = [['1']] + [['0'] + ['({})^2'.format(lam) if j == i else '0' for j in range(1, i + 1)] for i in range(1, m)]
  return {
    'name': name,
    'description': description,
    'ambient': {
      'dim': m,
      'variables': ['s'] + ['y{}'.format(i + 1) for i in range(fiber_dim)],
      'metric': metric,
      'domain': [list(s_interval)] + [[-1.0, 1.0]] * fiber_dim,
    },
    'field': ['1'] + ['0'] * fiber_dim,
    'checks': ['classify', 'geodesic', 'ambient-decomposition'],
    'expect': {'verdict': 'anti-torqued'},
  }

# Twisted product ds^2 + lam(s, y)^2 (dy1^2 + dy2^2) with lam = exp(s + y2/2)
# and the torqued field lam d/ds
def twisted_ambient():
  return {
    'dim': 3,
    'variables': ['s', 'y1', 'y2'],
    'metric': [['1'], ['0', 'exp(2*s + y2)'], ['0', '0', 'exp(2*s + y2)']],
    'domain': [[0.0, 1.0], [-1.0, 1.0], [-1.0, 1.0]],
  }

TWISTED_FIELD = ['exp(s + y2/2)', '0', '0']

BUILTINS = {
  'radial-r4': {
    'name': 'radial-r4',
    'description': 'unit radial field E/|E| on R^4 minus a ball around the origin',
    'ambient': euclidean_ambient(4, 3.0),
    'field': radial(4),
    'checks': ['classify', 'geodesic', 'ambient-decomposition'],
    'points': 200,
    'expect': {'verdict': 'anti-torqued'},
  },
  'clifford-torus': {
    'name': 'clifford-torus',
    'description': 'Clifford torus of radii 1/sqrt(2) in R^4; the radial axis is normal to it',
    'ambient': euclidean_ambient(4, 2.0),
    'field': radial(4),
    'submanifold': {
      'dim': 2,
      'variables': ['t1', 't2'],
      'immersion': ['sqrt(0.5)*cos(t1)', 'sqrt(0.5)*sin(t1)', 'sqrt(0.5)*cos(t2)', 'sqrt(0.5)*sin(t2)'],
      'domain': [[0.0, TWO_PI], [0.0, TWO_PI]],
    },
    'checks': ['classify', 'gauss', 'tangential-theorem'],
    'expect': {'verdict': 'anti-torqued'},
  },
  'tangent-developable': {
    'name': 'tangent-developable',
    'description': 'tangent developable of a great circle of the unit sphere; the radial axis is tangent',
    'ambient': euclidean_ambient(3, 3.0),
    'field': radial(3),
    'submanifold': {
      'dim': 2,
      'variables': ['s', 't'],
      'immersion': ['cos(s) - t*sin(s)', 'sin(s) + t*cos(s)', '0'],
      'domain': [[0.0, TWO_PI], [0.2, 2.0]],
    },
    'checks': ['classify', 'gauss', 'normal-theorem'],
    'expect': {'verdict': 'anti-torqued'},
  },
  'cone': {
    'name': 'cone',
    'description': 'cone x1^2 + x2^2 - x3^2 = 0 without its vertex; the radial axis is tangent',
    'ambient': euclidean_ambient(3, 3.0),
    'field': radial(3),
    'submanifold': {
      'dim': 2,
      'variables': ['s', 't'],
      'immersion': ['s*cos(t)', 's*sin(t)', 's'],
      'domain': [[0.5, 2.0], [0.0, TWO_PI]],
    },
    'checks': ['classify', 'gauss', 'normal-theorem', 'rectifying'],
    'points': 100,
    'expect': {'verdict': 'anti-torqued'},
  },
  'rectifying-psi': {
    'name': 'rectifying-psi',
    'description': 'sqrt(1+s^2) times a spherical surface with metric ds^2/(1+s^2)^2 + s^2/(1+s^2) dt^2',
    'ambient': euclidean_ambient(4, 4.0),
    'field': radial(4),
    'submanifold': {
      'dim': 2,
      'variables': ['s', 't'],
      'immersion': [
        'sqrt(1 + s^2)*cos(atan(s))',
        'sqrt(1 + s^2)*sin(atan(s))*cos(pi/4)',
        'sqrt(1 + s^2)*sin(atan(s))*sin(pi/4)*cos(t/sin(pi/4))',
        'sqrt(1 + s^2)*sin(atan(s))*sin(pi/4)*sin(t/sin(pi/4))',
      ],
      'domain': [[0.5, 3.0], [0.0, 4.0]],
      'curves': [{'start': [1.0, 2.0], 'length': 1.5, 'step': 0.01}],
    },
    'checks': ['classify', 'gauss', 'rectifying', 'avperp', 'warp-ode', 'warp-fit'],
    'expect': {'verdict': 'anti-torqued'},
  },
  'warped-exp': warped_document('warped-exp', 'exp(s)', description = 'ds^2 + e^{2s} g_F with the field d/ds'),
  'warped-cosh': warped_document('warped-cosh', 'cosh(s)', s_interval = (0.1, 1.0), description = 'ds^2 + cosh(s)^2 g_F with the field d/ds'),
  'hypersphere': {
    'name': 'hypersphere',
    'description': 'round 3-sphere of radius 2 in R^4; the radial axis is normal to it',
    'ambient': euclidean_ambient(4, 3.0),
    'field': radial(4),
    'submanifold': {
      'dim': 3,
      'variables': ['a', 'b', 'c'],
      'immersion': ['2*cos(a)', '2*sin(a)*cos(b)', '2*sin(a)*sin(b)*cos(c)', '2*sin(a)*sin(b)*sin(c)'],
      'domain': [[0.3, 2.8], [0.3, 2.8], [0.0, TWO_PI]],
    },
    'checks': ['classify', 'gauss', 'tangential-theorem'],
    'expect': {'verdict': 'anti-torqued'},
  },
  'unit-sphere': {
    'name': 'unit-sphere',
    'description': 'unit sphere in R^3 with the radial axis; umbilic but not rectifying',
    'ambient': euclidean_ambient(3, 2.0),
    'field': radial(3),
    'submanifold': {
      'dim': 2,
      'variables': ['a', 'b'],
      'immersion': ['sin(a)*cos(b)', 'sin(a)*sin(b)', 'cos(a)'],
      'domain': [[0.3, 2.8], [0.0, TWO_PI]],
    },
    'checks': ['gauss', 'rectifying', 'avperp'],
  },
  'twisted-leaf': {
    'name': 'twisted-leaf',
    'description': 'torqued field on a twisted product, tangent to the leaf y2 = 0',
    'ambient': twisted_ambient(),
    'field': TWISTED_FIELD,
    'submanifold': {
      'dim': 2,
      'variables': ['u1', 'u2'],
      'immersion': ['u1', 'u2', '0'],
      'domain': [[0.0, 1.0], [-1.0, 1.0]],
    },
    'checks': ['classify', 'gauss', 'torqued'],
    'expect': {'verdict': 'torqued'},
  },
  'twisted-fiber': {
    'name': 'twisted-fiber',
    'description': 'torqued field on a twisted product, normal to the fiber s = 1/2',
    'ambient': twisted_ambient(),
    'field': TWISTED_FIELD,
    'submanifold': {
      'dim': 2,
      'variables': ['u1', 'u2'],
      'immersion': ['0.5', 'u1', 'u2'],
      'domain': [[-1.0, 1.0], [-1.0, 1.0]],
    },
    'checks': ['classify', 'gauss', 'torqued'],
    'expect': {'verdict': 'torqued'},
  },
}

def names():
  return sorted(BUILTINS)

def builtin(name):
  if name not in BUILTINS:
    raise SchemaError("unknown built-in scene '{}' (known: {})".format(name, ', '.join(names())))
  return copy.deepcopy(BUILTINS[name])
