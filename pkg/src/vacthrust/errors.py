"""Exception and warning types shared across the toolkit."""


class VacthrustError(Exception):
    """Base class for domain errors raised by the physics modules."""


# em-fields
class ZeroMagneticField(VacthrustError, ValueError):
    pass


class SuperluminalBoost(VacthrustError, ValueError):
    pass


class PerpendicularFields(VacthrustError, ValueError):
    """No frame exists in which the fields are parallel."""


class DegenerateNullField(VacthrustError, ValueError):
    pass


class TimestepTooLarge(VacthrustError, ValueError):
    pass


class SuperluminalInitialVelocity(VacthrustError, ValueError):
    pass


class DriftExceedsC(UserWarning):
    """E x B / B^2 is at or above c; the non-relativistic drift formula is invalid."""


# propulsion
class ExhaustAtLightSpeed(VacthrustError, ValueError):
    pass


# special functions / modes
class OutOfDomain(VacthrustError, ValueError):
    pass


class IndexTooLarge(VacthrustError, ValueError):
    pass


class LossOfPrecision(UserWarning):
    """Estimated relative error of a special-function value exceeds 1e-7."""


# vev engine
class UnsupportedArity(VacthrustError, ValueError):
    pass


class QuadratureFailure(VacthrustError, RuntimeError):
    pass
