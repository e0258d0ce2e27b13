"""Definite negative answers.

These are not failures: each one certifies that the thing asked for does not
exist (or does not exist within the searched range).
"""


class DefiniteNegative(Exception):
    pass


class NoRoot(DefiniteNegative):
    pass


class NotConjugate(DefiniteNegative):
    pass


class NotInCentralizer(DefiniteNegative):
    pass


class NoneWithin(DefiniteNegative):
    def __init__(self, radius: int):
        super().__init__(f"no conjugator of length <= {radius}")
        self.radius = radius
