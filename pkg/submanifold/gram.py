import numpy as np
from config import DEFAULTS
from errors import RankDeficiencyError

def inner(G, u, v):
  return float(u @ G @ v)

def norm(G, u):
  return float(np.sqrt(max(inner(G, u, u), 0.0)))

# Remove the components of v along an orthonormal list, twice
def _orthogonalize(G, v, frame):
  for _ in range(2):
    for e in frame:
      v = v - inner(G, v, e) * e
  return v

# Modified Gram-Schmidt in G with one reorthogonalization pass
def gram_schmidt(vectors, G, tol = DEFAULTS):
  G = np.asarray(G, dtype = float)
  frame = []
  for k, v in enumerate(vectors):
    v = np.array(v, dtype = float)
    length = norm(G, v)
    w = _orthogonalize(G, v, frame)
    residual = norm(G, w)
    if length == 0.0 or residual <= tol.frame_tol * length:
      raise RankDeficiencyError('vector {} is dependent on the previous ones'.format(k))
    frame.append(w / residual)
  return frame

# Add coordinate vectors with the largest residual until the frame is complete; ties go to the lowest index
def complete_frame(frame, G, dim, tol = DEFAULTS):
  G = np.asarray(G, dtype = float)
  frame = list(frame)
  added = []
  identity = np.eye(dim)
  while len(frame) < dim:
    best, best_norm, best_vector = None, -1.0, None
    for k in range(dim):
      w = _orthogonalize(G, identity[k], frame)
      w_norm = norm(G, w)
      if w_norm > best_norm * (1.0 + 1e-12):
        best, best_norm, best_vector = k, w_norm, w
    if best_norm <= tol.frame_tol:
      raise RankDeficiencyError('cannot complete the frame beyond {} vectors'.format(len(frame)))
    frame.append(best_vector / best_norm)
    added.append(best_vector / best_norm)
  return added

# Orthonormal basis of the whole chart, starting from the given vectors
def orthonormal_basis(vectors, G, tol = DEFAULTS):
  frame = gram_schmidt(vectors, G, tol)
  return frame + complete_frame(frame, G, len(np.asarray(G)), tol)
