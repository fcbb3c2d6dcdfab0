import pathlib
import json
from errors import SchemaError
from scene.builtins import BUILTINS, builtin

BUILTIN_PREFIX = 'builtin:'

def read_scene(path):
  file = pathlib.Path(path)
  if not file.exists():
    raise SchemaError('scene file {} does not exist'.format(path))
  with open(file) as json_file:
    try:
      return json.load(json_file)
    except json.JSONDecodeError as e:
      raise SchemaError('{} is not valid JSON: {} at line {} column {}'.format(path, e.msg, e.lineno, e.colno))

# A scene document from a file path or a builtin:NAME reference
def scene_document(source):
  if source.startswith(BUILTIN_PREFIX):
    return builtin(source[len(BUILTIN_PREFIX):])
  return read_scene(source)

def write_scene(path, document):
  with open(path, 'w') as outfile:
    json.dump(document, outfile, indent = 2)
    outfile.write('\n')

def write_report(path, report):
  with open(path, 'w') as outfile:
    outfile.write(report.to_json())
    outfile.write('\n')

def export_builtins(directory):
  folder = pathlib.Path(directory)
  folder.mkdir(parents = True, exist_ok = True)
  written = []
  for name in sorted(BUILTINS):
    path = folder / '{}.json'.format(name)
    write_scene(path, builtin(name))
    written.append(path)
  return written
