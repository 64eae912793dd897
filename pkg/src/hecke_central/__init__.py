"""Central values of Hecke L-functions of imaginary quadratic fields via theta
values at CM points and ideal classes of a definite quaternion algebra."""

__version__ = "0.1.0"
