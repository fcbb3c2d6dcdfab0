from errors import SchemaError

# Every numerical threshold of the checks; scenes override entries by name
class Tolerances:
  def __init__(self, overrides = None):
    # Metric inversion and plane sections
    self.spd_tol = 1.0e-12
    self.degeneracy_tol = 1.0e-10

    # Frames and immersion regularity
    self.frame_tol = 1.0e-10
    self.rank_tol = 1.0e-10
    self.svd_rank_tol = 1.0e-8
    self.zero_field_tol = 1.0e-12

    # Classification
    self.class_tol = 1.0e-7
    self.class_band = 1.0e-5
    self.parallel_tol = 1.0e-9
    self.class_min_points = 50
    self.unit_tol = 1.0e-8
    self.geodesic_tol = 1.0e-8

    # Rectifying and characterization theorems
    self.proper_tol = 1.0e-8
    self.rect_tol = 1.0e-7
    self.avperp_tol = 1.0e-8
    self.parallel_normal_tol = 1.0e-8
    self.umbilic_tol = 1.0e-7
    self.det_tol = 1.0e-8
    self.curvature_tol = 1.0e-7
    self.gauss_tol = 1.0e-7

    # Warped products
    self.ode_tol = 1.0e-6
    self.warp_tol = 1.0e-6
    self.decomposition_tol = 1.0e-7
    self.converse_tol = 1.0e-8

    if overrides:
      self.update(overrides)

  def update(self, overrides):
    for name, value in overrides.items():
      if not hasattr(self, name):
        raise SchemaError("unknown tolerance '{}'".format(name), path = ['tolerances', name])
      setattr(self, name, type(getattr(self, name))(value))
    return self

DEFAULTS = Tolerances()
