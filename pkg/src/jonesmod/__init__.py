"""jonesmod: exact Jones polynomial computation, classification, and
mod-p enumeration for knots."""

__version__ = "0.1.0"
