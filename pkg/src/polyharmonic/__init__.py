"""Numerical and exact verification toolkit for sesquiharmonic and polyharmonic
Maass forms of level one: q-series identities, special functions, Green's
functions, Niebur Poincare series and regularized inner products."""

__version__ = "0.1.0"
