__version__ = "0.4.1"
version = f'gemkit {__version__}'

from gemkit.kirby.env import Env
from gemkit.kirby.builder import Builder
