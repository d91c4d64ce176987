"""
Exception hierarchy and console rendering of errors for polyzeta.
"""

from rich.console import Console
from rich.markdown import Markdown


class PolyzetaError(Exception):
    """Base class for every error raised by the library."""

    hint = "No specific hint available."


class NonRationalResult(PolyzetaError):
    """A polynomial expected to be rational still carries an omega component."""

    hint = "A coefficient kept a nonzero omega part; check the transcription of the closed form."

    def __init__(self, index: int):
        self.index = index
        super().__init__(f"coefficient of t^{index} is not rational")


class OrderUnderflow(PolyzetaError):
    hint = "Increase the series order; every derivative letter consumes one order."

    def __init__(self, needed: int, available: int):
        self.needed = needed
        self.available = available
        super().__init__(f"operator consumes {needed} orders but the series only has {available}")


class ArgumentError(PolyzetaError):
    hint = "Check the parameter ranges of the operation."


class PoleAtSample(PolyzetaError):
    hint = "A Pochhammer denominator vanishes at this sample; choose another t0."

    def __init__(self, t0, n: int):
        self.t0 = t0
        self.n = n
        super().__init__(f"denominator vanishes at t0={t0} for n={n}")


class InadmissibleIndex(PolyzetaError):
    hint = "The first slot needs exponent >= 2 or an alternating sign for the sum to converge."


class IndexSyntaxError(PolyzetaError):
    hint = "Use comma-separated exponents, '~' for an alternating slot and '{...}^m' for repetition, e.g. '{2~,1}^2'."


class ToleranceTooTight(PolyzetaError):
    hint = "Raise the truncation N or loosen the tolerance; the tail estimate cannot support this claim."

    def __init__(self, tolerance: float, tail_estimate: float):
        self.tolerance = tolerance
        self.tail_estimate = tail_estimate
        super().__init__(
            f"tolerance {tolerance:.3e} is below the tail estimate {tail_estimate:.3e}; result inconclusive"
        )


class NotInT3(PolyzetaError):
    hint = "Only polynomials in t^3 can be viewed as polynomials in x = t^3."

    def __init__(self, exponent: int):
        self.exponent = exponent
        super().__init__(f"t^{exponent} is not a power of t^3")


class ErrorHandler:
    def __init__(self, console: Console):
        self.console = console

    def handle_error(self, error) -> None:
        """Display an error with its hint."""
        message = str(error) or error.__class__.__name__
        self.console.print(f"[bold red]Error:[/bold red] {message}")
        self._print_hint(error)

    def _print_hint(self, error) -> None:
        hint = getattr(error, "hint", None)
        if not hint:
            return
        markdown_output = f"**Problem:**\n{error.__class__.__name__}\n\n**Hint:**\n- {hint}\n"
        self.console.print(Markdown(markdown_output))
