"""Multi-graded cluster algebras: grading classification, degree propagation
under mutation, finite-type enumeration, homogenisation and tropical friezes."""

__version__ = "0.1.0"
