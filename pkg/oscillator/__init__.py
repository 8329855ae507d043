# Oscillator module
from .schemas import *
