"""arcell: a simulator-backed workbench for AR/HMD robot-cell setup, programming and interaction."""

__version__ = "0.1.0"
