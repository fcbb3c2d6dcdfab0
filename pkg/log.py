import sys
import textwrap3
from constants import LogLevel

class Log:
  def __init__(self, width = 78, echo = False):
    self.messages = []
    self.width = width
    self.echo = echo

  def add(self, message, level = LogLevel.INFO):
    # Split the message if necessary, among multiple lines
    new_msg_lines = textwrap3.wrap(message, self.width)

    for line in new_msg_lines:
      # Add the new line with its level
      self.messages.append({'text': line, 'level': level})

    if self.echo:
      for line in new_msg_lines:
        print('[{}] {}'.format(level.name, line), file = sys.stderr)

  def debug(self, message):
    self.add(message, LogLevel.DEBUG)

  def info(self, message):
    self.add(message, LogLevel.INFO)

  def warn(self, message):
    self.add(message, LogLevel.WARN)

  def error(self, message):
    self.add(message, LogLevel.ERROR)

  def lines(self, min_level = LogLevel.INFO):
    return [m['text'] for m in self.messages if m['level'] >= min_level]
