from constants import LogLevel
from log import Log

def test_long_messages_are_wrapped():
  log = Log(width = 20)
  log.info('classification of the radial axis finished without surprises')
  assert len(log.messages) > 1
  assert all(len(m['text']) <= 20 for m in log.messages)
  assert all(m['level'] == LogLevel.INFO for m in log.messages)

def test_lines_filter_by_level():
  log = Log()
  log.debug('traced 151 samples')
  log.info('classify: pass')
  log.warn('rectifying: fail')
  log.error('warp-fit: error')
  assert log.lines() == ['classify: pass', 'rectifying: fail', 'warp-fit: error']
  assert log.lines(LogLevel.WARN) == ['rectifying: fail', 'warp-fit: error']
  assert len(log.lines(LogLevel.DEBUG)) == 4

def test_echo_goes_to_stderr(capsys):
  log = Log(echo = True)
  log.warn('integral curve left the domain')
  captured = capsys.readouterr()
  assert captured.out == ''
  assert captured.err == '[WARN] integral curve left the domain\n'
