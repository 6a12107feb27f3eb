"""refdecomp: decompose the diff between two functionally equivalent methods
into an explicit, execution-verified sequence of behavior-preserving rewrites."""

__version__ = "0.1.0"
