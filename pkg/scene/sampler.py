import numpy as np
from config import DEFAULTS
from errors import DomainError, TooFewSamplesError

MAX_ATTEMPTS = 100

# Ambient and parameter boxes draw from independent streams
class Sampler:
  def __init__(self, seed):
    self.seed = seed
    ambient, parameters = np.random.SeedSequence(seed).spawn(2)
    self.ambient_rng = np.random.default_rng(ambient)
    self.parameter_rng = np.random.default_rng(parameters)

  def _draw(self, rng, box, count, accept):
    box = np.asarray(box, dtype = float)
    points = []
    attempts = 0
    while len(points) < count:
      if attempts >= MAX_ATTEMPTS * count:
        raise TooFewSamplesError('only {} of {} points found in the domain'.format(len(points), count))
      attempts += 1
      x = box[:, 0] + (box[:, 1] - box[:, 0]) * rng.random(len(box))
      try:
        ok = accept(x)
      except DomainError:
        ok = False
      if ok:
        points.append(x)
    return points

  # Points of the ambient domain where the field does not vanish
  def ambient(self, scene, count, tol = DEFAULTS):
    def accept(x):
      if not scene.contains(x):
        return False
      if scene.field is None:
        return True
      return scene.metric.at(x, order = 0).norm(scene.field(x)) > tol.zero_field_tol
    return self._draw(self.ambient_rng, scene.domain, count, accept)

  # Parameter points whose image avoids the excluded balls
  def parameters(self, scene, count, tol = DEFAULTS):
    imm = scene.immersion
    ambient = scene.ambient
    def accept(u):
      x = imm(u)
      if not all(np.linalg.norm(x - c) >= r for c, r in ambient.exclude):
        return False
      if scene.field is None:
        return True
      return scene.metric.at(x, order = 0).norm(scene.field(x)) > tol.zero_field_tol
    return self._draw(self.parameter_rng, imm.domain, count, accept)
