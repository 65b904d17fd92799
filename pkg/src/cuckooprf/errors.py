"""Error taxonomy shared across the package.

Plain ValueError marks a usage error (a malformed argument at a call
site). ConfigurationError marks an experiment or builder configuration
that violates a stated constraint; the CLI maps it to exit code 2.
ProtocolViolation marks a distinguisher breaking the game contract
(budget exceeded, repeated or out-of-domain query); the game runner
catches it, aborts the trial, and reports the count.
"""


class ConfigurationError(ValueError):
    pass


class ProtocolViolation(RuntimeError):
    pass
