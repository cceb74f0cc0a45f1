"""Exception hierarchy.

Everything raised on bad input derives from ``InputError`` (a ``ValueError``);
violations of a bound's own validity condition derive from
``PreconditionError`` so the CLI can tell the two apart.
"""


class InputError(ValueError):
    pass


class PreconditionError(InputError):
    pass


class InvalidDistribution(InputError):
    pass


class MismatchedSupport(InputError):
    pass


class NonPositiveSigma(InputError):
    pass


class NonPositive(InputError):
    pass


class DegenerateQ(PreconditionError):
    pass


class DegenerateQBar(PreconditionError):
    pass


class OutOfRange(InputError):
    pass


class BadWeights(InputError):
    pass


class DegenerateLoss(PreconditionError):
    pass


class ZeroWeight(InputError):
    pass


class BadN(InputError):
    pass


class BadDimension(InputError):
    pass


class BadC(InputError):
    pass


class BadRange(InputError):
    pass


class BadEpsilon(InputError):
    pass


class TooLarge(InputError):
    pass
