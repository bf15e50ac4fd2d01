"""
Exception hierarchy for CipherLab.

The CLI maps ConfigError to exit code 2 and CryptoMismatchError to exit
code 3. Attack failures are never raised; they are reported with
status "failed" in an AttackReport.
"""

from typing import Optional


class CipherLabError(Exception):
    """Base class for all CipherLab errors"""
    exit_code = 1


class ConfigError(CipherLabError):
    """Missing, malformed or invalid configuration input"""
    exit_code = 2

    def __init__(self, message: str, path: Optional[str] = None):
        self.path = path
        if path and path not in message:
            message = f"{message}: {path}"
        super().__init__(message)


class InvalidSpecError(ConfigError):
    """A generator, cipher or substitution spec violates its invariants"""
    pass


class LexiconError(ConfigError):
    """Malformed mix lexicon or character map, or an injectivity violation"""
    pass


class CryptoMismatchError(CipherLabError):
    """Decryption produced invalid output - wrong key or wrong config"""
    exit_code = 3


class InsufficientKeystreamError(CipherLabError):
    """The running key is shorter than the message it must cover"""

    def __init__(self, needed: int, available: int):
        self.needed = needed
        self.available = available
        super().__init__(
            f"Insufficient running key: message needs {needed} bytes, "
            f"keystream provides {available}"
        )


class UnmappedLetterError(CipherLabError):
    """A letter outside a partial character map hit the reject policy"""

    def __init__(self, letter: str, position: int):
        self.letter = letter
        self.position = position
        super().__init__(f"Unmapped letter {letter!r} at position {position}")


class AnalysisError(CipherLabError):
    """A statistic or attack precondition does not hold"""
    pass


class CorpusTooSmallError(AnalysisError):
    """Evaluation corpus or trial count below the harness minimum"""
    pass


class FrameError(CipherLabError):
    """Pipeline failure while processing one frame of a session"""

    def __init__(self, index: int, cause: Exception):
        self.index = index
        self.cause = cause
        super().__init__(f"Frame {index}: {cause}")
