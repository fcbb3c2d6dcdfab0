import numpy as np
from constants import CHECK_ORDER, CheckStatus, CheckType, FIELD_CHECKS, IMMERSION_CHECKS, Verdict
from errors import (InconsistentSampleError, ModelViolationError, PreconditionError, RectifyError,
                    SceneError, SchemaError)
from field.classifier import classify, fit_torse_forming, geodesic_unit_check
from log import Log
from rectifying.verifier import (avperp_report, verify_normal_vanishes, verify_rectifying,
                                 verify_tangential_vanishes, verify_torqued_props)
from report import CheckResult, Report, SampleReport, plain
from scene.sampler import Sampler
from submanifold.frames import gauss_tensors
from warped.ambient import verify_ambient_decomposition
from warped.curve import fit_tanh_integral, trace_integral_curve, warping_ode_residual

def check_types(names):
  selected = set()
  for name in names:
    try:
      selected.add(CheckType(name))
    except ValueError:
      raise SchemaError("unknown check '{}'".format(name), path = ['checks'])
  return [c for c in CHECK_ORDER if c in selected]

# Samples, fits and curves of one scene run, computed on first use
class Run:
  def __init__(self, scene, points, seed, log):
    self.scene = scene
    self.tol = scene.tolerances
    self.points = points
    self.seed = seed
    self.log = log
    self.sampler = Sampler(seed)
    self.results = {}

    self._ambient_sample = None
    self._fits = None
    self._classification = None
    self._parameter_sample = None
    self._rectifying = None
    self._curves = None

  def ambient_sample(self):
    if self._ambient_sample is None:
      self._ambient_sample = self.sampler.ambient(self.scene.ambient, self.points, self.tol)
      self.log.debug('drew {} ambient points'.format(len(self._ambient_sample)))
    return self._ambient_sample

  def fits(self):
    if self._fits is None:
      self._fits = [fit_torse_forming(self.scene.metric, self.scene.field, x, self.tol) for x in self.ambient_sample()]
    return self._fits

  def classification(self):
    if self._classification is None:
      self._classification = classify(self.fits(), self.tol)
      self.log.info('field classified {} (worst class residual {:.2e})'.format(
        self._classification.verdict.value, self._classification.worst))
    return self._classification

  def verdict(self):
    return self.classification().verdict

  def parameter_sample(self):
    if self._parameter_sample is None:
      self._parameter_sample = self.sampler.parameters(self.scene, self.points, self.tol)
      self.log.debug('drew {} parameter points'.format(len(self._parameter_sample)))
    return self._parameter_sample

  def rectifying(self):
    if self._rectifying is None:
      scene = self.scene
      self._rectifying = verify_rectifying(scene.immersion, scene.metric, scene.field, self.parameter_sample(), self.tol)
      self.log.info('rectifying sample is {}'.format(self._rectifying.mode))
    return self._rectifying

  def curves(self):
    if self._curves is None:
      scene = self.scene
      self._curves = []
      for c in scene.curves:
        curve = trace_integral_curve(scene.immersion, scene.metric, scene.field, c.start, c.length, c.step, self.tol)
        if curve.exited:
          self.log.warn('integral curve from {}: {}'.format(list(c.start), curve.exit_reason))
        self.log.debug('traced {} samples with {} field evaluations'.format(len(curve), curve.evaluations))
        self._curves.append(curve)
    return self._curves

class Engine:
  def __init__(self, log = None):
    self.log = log if log is not None else Log()

    self.handlers = {
      CheckType.CLASSIFY: self.check_classify,
      CheckType.GEODESIC: self.check_geodesic,
      CheckType.AMBIENT_DECOMPOSITION: self.check_ambient_decomposition,
      CheckType.GAUSS: self.check_gauss,
      CheckType.TANGENTIAL_THEOREM: self.check_tangential,
      CheckType.NORMAL_THEOREM: self.check_normal,
      CheckType.TORQUED: self.check_torqued,
      CheckType.RECTIFYING: self.check_rectifying,
      CheckType.AVPERP: self.check_avperp,
      CheckType.WARP_ODE: self.check_warp_ode,
      CheckType.WARP_FIT: self.check_warp_fit,
    }

  # Selected checks (the scene list by default) in dependency order; failures never stop the run
  def run(self, scene, checks = None, points = None, seed = None):
    checks = check_types(scene.checks if checks is None else checks)
    points = scene.points if points is None else points
    seed = scene.seed if seed is None else seed
    run = Run(scene, points, seed, self.log)
    report = Report(scene.name, seed, points)
    report.log = self.log

    self.log.info('scene {}: {} checks, seed {}, {} points'.format(scene.name, len(checks), seed, points))
    for check in checks:
      self.log.debug('running {}'.format(check.value))
      result = self.guard(check, run)
      run.results[check] = result
      report.add(result)
      message = '{}: {}'.format(check.value, result.status.value)
      if result.residual is not None:
        message += ' (residual {:.2e})'.format(result.residual)
      if result.status == CheckStatus.ERROR:
        self.log.error('{}: {}'.format(message, result.message))
      elif result.status == CheckStatus.PASS:
        self.log.info(message)
      else:
        self.log.warn(message)

    if run._classification is not None:
      summary = run._classification
      report.classification = {
        'verdict': summary.verdict.value,
        'f_summary': summary.f_summary(),
        'residuals': summary.residuals(),
        'witness': plain(summary.witness),
      }
    return report

  # A prerequisite check must pass; it runs here when it was not selected
  def require(self, run, check):
    if check not in run.results:
      run.results[check] = self.guard(check, run)
    result = run.results[check]
    if result.status != CheckStatus.PASS:
      raise PreconditionError('{} is {}'.format(check.value, result.status.value))

  # Run one check and map its exceptions onto a status
  def guard(self, check, run):
    name = check.value
    if check in FIELD_CHECKS and run.scene.field is None:
      return CheckResult(name, CheckStatus.NA, message = 'scene has no vector field')
    if check in IMMERSION_CHECKS and run.scene.immersion is None:
      return CheckResult(name, CheckStatus.NA, message = 'scene has no submanifold')
    try:
      return self.handlers[check](run)
    except PreconditionError as e:
      return CheckResult(name, CheckStatus.NA, witness = _witness(e.witness), message = str(e))
    except InconsistentSampleError as e:
      return CheckResult(name, CheckStatus.FAIL, witness = _witness(e.witness), message = str(e))
    except SceneError:
      raise
    except (RectifyError, np.linalg.LinAlgError, ArithmeticError, ValueError) as e:
      return CheckResult(name, CheckStatus.ERROR, message = '{}: {}'.format(type(e).__name__, e))

  def check_classify(self, run):
    summary = run.classification()
    expected = run.scene.expect.get('verdict')
    status = CheckStatus.PASS
    message = 'verdict {}'.format(summary.verdict.value)
    if summary.verdict == Verdict.NONE:
      status = CheckStatus.FAIL
      message += '; the field is not torse-forming'
    elif expected is not None and expected != summary.verdict:
      status = CheckStatus.FAIL
      message += ', expected {}'.format(expected.value)
    f = summary.f_summary()
    message += '; f in [{:.3e}, {:.3e}]'.format(f['min'], f['max'])
    witness = {'point': summary.witness, 'values': {'verdict': summary.verdict.value}}
    return CheckResult(CheckType.CLASSIFY.value, status, summary.worst, plain(witness), message, summary.residuals())

  def check_geodesic(self, run):
    value, point = geodesic_unit_check(run.scene.metric, run.scene.field, run.fits(), run.verdict(), run.tol)
    sample = SampleReport(CheckType.GEODESIC.value)
    sample.record('|nabla_V V|', value, run.tol.geodesic_tol, point)
    return CheckResult.from_sample(sample, 'unit anti-torqued field')

  def check_ambient_decomposition(self, run):
    sample = verify_ambient_decomposition(run.scene.metric, run.scene.field, run.ambient_sample(), run.verdict(), run.tol)
    return CheckResult.from_sample(sample)

  def check_gauss(self, run):
    scene = run.scene
    sample = SampleReport(CheckType.GAUSS.value)
    for u in run.parameter_sample():
      intrinsic, _, extrinsic = gauss_tensors(scene.immersion, scene.metric, u, run.tol)
      sample.record('|R - (R~ + h h - h h)|', float(np.max(np.abs(intrinsic - extrinsic))), run.tol.gauss_tol, u)
    return CheckResult.from_sample(sample)

  def check_tangential(self, run):
    scene = run.scene
    sample = verify_tangential_vanishes(scene.immersion, scene.metric, scene.field, run.parameter_sample(), run.tol)
    return CheckResult.from_sample(sample)

  def check_normal(self, run):
    scene = run.scene
    sample = verify_normal_vanishes(scene.immersion, scene.metric, scene.field, run.parameter_sample(), run.tol)
    return CheckResult.from_sample(sample)

  def check_torqued(self, run):
    scene = run.scene
    sample = verify_torqued_props(scene.immersion, scene.metric, scene.field, run.parameter_sample(), run.verdict(), run.tol)
    return CheckResult.from_sample(sample)

  def check_rectifying(self, run):
    sample = run.rectifying()
    result = CheckResult.from_sample(sample, 'mode: {}'.format(sample.mode))
    result.details['mode'] = sample.mode
    return result

  def check_avperp(self, run):
    scene = run.scene
    sample = avperp_report(scene.immersion, scene.metric, scene.field, run.parameter_sample(), run.tol)
    return CheckResult.from_sample(sample)

  def check_warp_ode(self, run):
    self.require(run, CheckType.RECTIFYING)
    if not run.rectifying().proper:
      raise PreconditionError('submanifold is not proper rectifying (mode: {})'.format(run.rectifying().mode))
    sample = SampleReport(CheckType.WARP_ODE.value)
    for curve in run.curves():
      residual, k = warping_ode_residual(curve)
      sample.record("|lam' - f (1 - lam^2)|", residual, run.tol.ode_tol, curve.u[k],
                    s = curve.s[k], lam = curve.lam[k], f = curve.f[k])
      sample.record('|speed - 1|', curve.speed_defect, run.tol.ode_tol, curve.u[0])
      if curve.exited:
        sample.note(curve.exit_reason)
    return CheckResult.from_sample(sample)

  def check_warp_fit(self, run):
    self.require(run, CheckType.WARP_ODE)
    sample = SampleReport(CheckType.WARP_FIT.value)
    for curve in run.curves():
      try:
        fit = fit_tanh_integral(curve)
      except ModelViolationError as e:
        return CheckResult(CheckType.WARP_FIT.value, CheckStatus.FAIL, witness = _witness(e.witness), message = str(e))
      k = fit.worst
      sample.record('|lam - tanh(F + C)|', fit.deviation, run.tol.warp_tol, curve.u[k],
                    s = curve.s[k], lam = curve.lam[k], model = fit.model[k], C = fit.C)
    return CheckResult.from_sample(sample)

def _witness(witness):
  if witness is None:
    return None
  if isinstance(witness, dict):
    return plain(witness)
  return {'point': plain(witness), 'values': {}}
