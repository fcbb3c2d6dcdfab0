import sys
import warnings
from cli import main as run

if not sys.warnoptions:
  warnings.simplefilter("ignore")  # Silence numpy runtime warnings

def main():
  status = run(sys.argv[1:])
  sys.exit(int(status))

if __name__ == '__main__':
  main()
