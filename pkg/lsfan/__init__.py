"""Seshadri stratifications of Schubert varieties: bonded posets, LS-lattices and checks"""

__version__ = "0.1.0"
