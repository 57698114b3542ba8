"""stackcount - sector calculus, Manin/Malle invariants and point counts for stacks."""

__version__ = "0.1.0"
