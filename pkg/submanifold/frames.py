import numpy as np
from config import DEFAULTS
from errors import NonNormalError
from jet.jet import solve, values
from jet.kernel import christoffel, riemann_tensor
from submanifold.gram import complete_frame, gram_schmidt
from submanifold.immersion import check_rank, induced_metric

def _freeze(array):
  array = np.array(array, dtype = float)
  array.setflags(write = False)
  return array

class FramePacket:
  """
  Extrinsic geometry of the immersion at one parameter point.

  tangent[a] and normal[alpha] are ambient component vectors, orthonormal in
  the ambient metric. h[alpha, a, b] = g~(h(e_a, e_b), xi_alpha) and
  h_coord[i, j] is the ambient vector h(d_i, d_j).
  """
  def __init__(self, u, point, metric, jacobian, tangent, normal, h_coord, field = None):
    self.u = _freeze(u)
    self.point = _freeze(point)
    self.metric = metric
    self.G = metric.g
    self.jacobian = _freeze(jacobian)
    self.tangent = _freeze(tangent)
    self.normal = _freeze(normal)
    self.n, self.m = self.tangent.shape
    self.induced = _freeze(self.jacobian.T @ self.G @ self.jacobian)
    self.induced_inverse = _freeze(np.linalg.inv(self.induced))
    # frame_coords[:, a] are the parameter components of e_a
    self.frame_coords = _freeze(self.induced_inverse @ self.jacobian.T @ self.G @ self.tangent.T)
    self.h_coord = _freeze(h_coord)
    self.h = _freeze(np.einsum('ia,jb,ijk,kl,cl->cab', self.frame_coords, self.frame_coords,
                               self.h_coord, self.G, self.normal))

    self.field = None
    self.v_top = self.v_perp = None
    if field is not None:
      self.field = _freeze(field)
      self.v_top = _freeze(self.tangent_part(self.field))
      self.v_perp = _freeze(self.field - self.v_top)

  def inner(self, u, v):
    return float(u @ self.G @ v)

  def norm(self, u):
    return float(np.sqrt(max(self.inner(u, u), 0.0)))

  def tangent_part(self, w):
    return self.tangent.T @ (self.tangent @ self.G @ w)

  def normal_part(self, w):
    return self.normal.T @ (self.normal @ self.G @ w)

  # Parameter components of the tangent part of an ambient vector
  def tangent_coords(self, w):
    return self.induced_inverse @ (self.jacobian.T @ self.G @ w)

  def push(self, X):
    return self.jacobian @ np.asarray(X, dtype = float)

  # h(X, Y) for parameter-space vectors X, Y, as an ambient vector
  def h_of(self, X, Y):
    return np.einsum('ijk,i,j->k', self.h_coord, np.asarray(X, float), np.asarray(Y, float))

  def h_norm(self):
    return float(np.max(np.abs(self.h))) if self.h.size else 0.0

class FirstNormalSpace:
  def __init__(self, basis, rank, singular_values):
    self.basis = _freeze(basis) if len(basis) else np.zeros((0, 0))
    self.rank = rank
    self.singular_values = _freeze(singular_values)

def frames(imm, metric, u, field = None, order = 1, tol = DEFAULTS):
  u = np.asarray(u, dtype = float)
  psi = imm.jets(u, 2)
  point = values(psi)
  J = np.array([p.gradient() for p in psi])
  check_rank(J, u, tol)
  hessians = np.array([p.hessian() for p in psi])

  ambient = metric.at(point, order = max(order, 1))
  tangent = gram_schmidt(J.T, ambient.g, tol)
  normal = complete_frame(tangent, ambient.g, imm.m, tol)

  gamma = christoffel(ambient, tol)
  # Psi_ij + Gamma~(Psi_i, Psi_j), then its normal projection
  second = np.einsum('kij->ijk', hessians) + np.einsum('kab,ai,bj->ijk', gamma, J, J)
  N = np.array(normal)
  h_coord = np.einsum('ijk,kl,al,ac->ijc', second, ambient.g, N, N)

  V = None if field is None else field(point)
  return FramePacket(u, point, ambient, J, tangent, N, h_coord, V)

# Rank and orthonormal basis of the span of h(X, Y) at the point
def first_normal_space(packet, tol = DEFAULTS):
  n = packet.n
  rows = [packet.h[:, a, b] for a in range(n) for b in range(a, n)]
  H = np.array(rows)
  if H.size == 0:
    return FirstNormalSpace([], 0, [])
  _, s, vt = np.linalg.svd(H)
  if s.size == 0 or s[0] <= tol.frame_tol:
    return FirstNormalSpace([], 0, s)
  rank = int(np.sum(s > tol.svd_rank_tol * s[0]))
  basis = vt[:rank] @ packet.normal
  return FirstNormalSpace(basis, rank, s)

def second_fundamental_form(imm, metric, u, tol = DEFAULTS):
  packet = frames(imm, metric, u, tol = tol)
  return packet.h, first_normal_space(packet, tol)

# A_xi in the orthonormal tangent frame: g(A_xi e_a, e_b) = g~(h(e_a, e_b), xi)
def shape_operator(packet, xi, tol = DEFAULTS):
  xi = np.asarray(xi, dtype = float)
  tangential = packet.tangent @ packet.G @ xi
  if np.linalg.norm(tangential) > tol.frame_tol * max(1.0, packet.norm(xi)):
    raise NonNormalError('vector has tangential part of size {:.3e}'.format(np.linalg.norm(tangential)))
  weights = packet.normal @ packet.G @ xi
  return np.einsum('c,cab->ab', weights, packet.h)

def mean_curvature(packet):
  trace = np.einsum('caa->c', packet.h) / packet.n
  return trace @ packet.normal

def decompose_field(packet, V = None):
  if V is None:
    V = packet.field
  V = np.asarray(V, dtype = float)
  top = packet.tangent_part(V)
  perp = V - top
  return top, perp, packet.norm(top), packet.norm(perp)

# Both sides of the Gauss equation in the orthonormal tangent frame, as g(R(e_a, e_b)e_c, e_d)
def gauss_tensors(imm, metric, u, tol = DEFAULTS):
  induced = induced_metric(imm, metric, u, tol)
  packet = frames(imm, metric, u, order = 2, tol = tol)
  B = packet.frame_coords
  R = riemann_tensor(induced, tol)
  intrinsic = np.einsum('mkij,ia,jb,kc,md->abcd', np.einsum('ml,lkij->mkij', induced.g, R), B, B, B, B)

  E = packet.tangent
  Rt = np.einsum('ml,lkij->mkij', packet.G, riemann_tensor(packet.metric, tol))
  ambient = np.einsum('mkij,ai,bj,ck,dm->abcd', Rt, E, E, E, E)
  # hh[a, b, c, d] = g~(h(e_a, e_b), h(e_c, e_d))
  hh = np.einsum('xab,xcd->abcd', packet.h, packet.h)
  extrinsic = ambient + np.einsum('adbc->abcd', hh) - np.einsum('acbd->abcd', hh)
  return intrinsic, ambient, extrinsic

def gauss_equation_residual(imm, metric, u, X, Y, Z, W, tol = DEFAULTS):
  induced = induced_metric(imm, metric, u, tol)
  packet = frames(imm, metric, u, order = 2, tol = tol)
  X, Y, Z, W = (np.asarray(v, dtype = float) for v in (X, Y, Z, W))
  lhs = induced.inner(np.einsum('lkij,k,i,j->l', riemann_tensor(induced, tol), Z, X, Y), W)

  JX, JY, JZ, JW = (packet.push(v) for v in (X, Y, Z, W))
  ambient = packet.inner(np.einsum('lkij,k,i,j->l', riemann_tensor(packet.metric, tol), JZ, JX, JY), JW)
  rhs = (ambient + packet.inner(packet.h_of(X, W), packet.h_of(Y, Z))
         - packet.inner(packet.h_of(X, Z), packet.h_of(Y, W)))
  return abs(lhs - rhs)

# First derivatives along M of the tangential and normal parts of the field; column i is d_i
class FieldAlongM:
  def __init__(self, imm, metric, field, u, tol = DEFAULTS):
    self.packet = frames(imm, metric, u, field = field, tol = tol)
    n, m = imm.n, imm.m
    psi = imm.jets(u, 2)
    dpsi = [[psi[a].partial(i) for i in range(n)] for a in range(m)]
    base = [p.truncate(1) for p in psi]
    G = metric.compose(base)
    V = field.compose(base)

    # Tangent part V^T = d_i Psi c^i with g_ij c^j = g~(d_i Psi, V), as 1-jets
    GV = [sum((G[a][b] * V[b] for b in range(m)), 0.0) for a in range(m)]
    rhs = [sum((dpsi[a][i] * GV[a] for a in range(m)), 0.0) for i in range(n)]
    gram = [[None] * n for _ in range(n)]
    for i in range(n):
      for j in range(i, n):
        total = 0.0
        for a in range(m):
          Gd = sum((G[a][b] * dpsi[b][j] for b in range(m)), 0.0)
          total = total + dpsi[a][i] * Gd
        gram[i][j] = gram[j][i] = total
    coeffs = solve(gram, rhs)
    top = [sum((dpsi[a][i] * coeffs[i] for i in range(n)), 0.0) for a in range(m)]
    perp = [V[a] - top[a] for a in range(m)]

    self.d_top = np.array([t.gradient() for t in top])
    self.d_perp = np.array([p.gradient() for p in perp])
    gamma = christoffel(self.packet.metric, tol)
    J = self.packet.jacobian
    v_top, v_perp = self.packet.v_top, self.packet.v_perp
    # Ambient covariant derivatives along d_i
    self.cov_top = self.d_top + np.einsum('kab,ai,b->ki', gamma, J, v_top)
    self.cov_perp = self.d_perp + np.einsum('kab,ai,b->ki', gamma, J, v_perp)

  # D_X V^perp, the normal connection
  def normal_connection(self, X):
    return self.packet.normal_part(self.cov_perp @ np.asarray(X, dtype = float))

  # Levi-Civita derivative of V^T on M, as an ambient vector
  def intrinsic_top(self, X):
    return self.packet.tangent_part(self.cov_top @ np.asarray(X, dtype = float))

  def ambient_top(self, X):
    return self.cov_top @ np.asarray(X, dtype = float)
