import sys
import argparse
import numpy as np
from archive import export_builtins, scene_document, write_report
from constants import CheckStatus, StatusType
from engine import Engine
from errors import NumericError, RectifyError, SceneError, SchemaError
from expression.evaluate import Expression
from log import Log
from scene.builtins import BUILTINS, names
from scene.scene import load_scene

def build_parser():
  parser = argparse.ArgumentParser(prog = 'rectify-check',
                                   description = 'Numerical checks of torse-forming axes and rectifying submanifolds.')
  commands = parser.add_subparsers(dest = 'command', required = True)

  check = commands.add_parser('check', help = 'run the checks of a scene')
  check.add_argument('scene', help = 'scene JSON file or builtin:NAME')
  check.add_argument('--checks', help = 'comma-separated check names, overriding the scene list')
  check.add_argument('--seed', type = int)
  check.add_argument('--points', type = int)
  check.add_argument('--json', dest = 'json_path', help = 'also write the machine report to this file')
  check.add_argument('--verbose', '-v', action = 'store_true', help = 'echo log messages to stderr while running')

  commands.add_parser('list-builtins', help = 'list the embedded scenes')

  evaluate = commands.add_parser('eval', help = 'evaluate an expression and its gradient at a point')
  evaluate.add_argument('expression')
  evaluate.add_argument('--at', required = True, help = 'assignments such as x1=1,x2=0.5')
  evaluate.add_argument('--order', type = int, default = 1, choices = [0, 1, 2, 3])

  export = commands.add_parser('export-builtins', help = 'write every embedded scene as a JSON file')
  export.add_argument('directory')
  return parser

def parse_assignments(text):
  variables, point = [], []
  for part in text.split(','):
    name, sep, value = part.partition('=')
    if not sep:
      raise SchemaError("expected NAME=VALUE, got '{}'".format(part.strip()), path = ['--at'])
    variables.append(name.strip())
    point.append(float(value))
  return variables, point

# Exit status from the per-check outcomes
def exit_status(report):
  statuses = [c.status for c in report.checks]
  if CheckStatus.ERROR in statuses:
    return StatusType.NUMERIC_ERROR
  if any(s != CheckStatus.PASS for s in statuses):
    return StatusType.FAIL
  return StatusType.OK

def run_check(args, out):
  scene = load_scene(scene_document(args.scene))
  checks = [c.strip() for c in args.checks.split(',') if c.strip()] if args.checks else None
  engine = Engine(Log(echo = args.verbose))
  report = engine.run(scene, checks = checks, points = args.points, seed = args.seed)
  print(report.render(), file = out)
  if args.json_path:
    write_report(args.json_path, report)
  return exit_status(report)

def run_list(out):
  for name in names():
    print('{:<22} {}'.format(name, BUILTINS[name].get('description', '')), file = out)
  return StatusType.OK

def run_eval(args, out):
  variables, point = parse_assignments(args.at)
  expression = Expression(args.expression, variables)
  print('{} = {!r}'.format(expression.text, expression(point)), file = out)
  if args.order > 0:
    jet = expression.jet(point, args.order)
    print('gradient = {}'.format(np.array2string(jet.gradient(), precision = 12)), file = out)
    if args.order > 1:
      print('hessian =\n{}'.format(np.array2string(jet.hessian(), precision = 12)), file = out)
  return StatusType.OK

def run_export(args, out):
  for path in export_builtins(args.directory):
    print(path, file = out)
  return StatusType.OK

def main(argv = None, out = None):
  out = out or sys.stdout
  args = build_parser().parse_args(argv)
  try:
    if args.command == 'check':
      return run_check(args, out)
    if args.command == 'list-builtins':
      return run_list(out)
    if args.command == 'eval':
      return run_eval(args, out)
    return run_export(args, out)
  except SceneError as e:
    print('scene error: {}'.format(e), file = sys.stderr)
    return StatusType.SCENE_ERROR
  except (NumericError, RectifyError, np.linalg.LinAlgError, ArithmeticError) as e:
    print('numeric error: {}: {}'.format(type(e).__name__, e), file = sys.stderr)
    return StatusType.NUMERIC_ERROR
