"""Global colour scheme for a poster: one foreground, one background.

Two different luminance notions coexist here on purpose.  ``luma`` is the
plain weighted channel mean used by the ink-balance metrics (channels stay
in 0..255).  ``relative_luminance`` linearises sRGB to 0..1 and feeds the
contrast-ratio gate applied when a scheme is constructed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ContrastError, RangeError

RGB = tuple[int, int, int]

# Rec. 709 channel weights, shared by both luminance notions.
_R_WEIGHT = 0.2126
_G_WEIGHT = 0.7152
_B_WEIGHT = 0.0722

DEFAULT_MIN_CONTRAST = 2.5


def _check_rgb(rgb: RGB, label: str) -> RGB:
    if len(rgb) != 3:
        raise RangeError(f"{label} must have three channels, got {rgb!r}")
    for channel in rgb:
        if not isinstance(channel, int) or isinstance(channel, bool):
            raise RangeError(f"{label} channels must be integers, got {rgb!r}")
        if not 0 <= channel <= 255:
            raise RangeError(f"{label} channels must be in 0..255, got {rgb!r}")
    return (rgb[0], rgb[1], rgb[2])


def luma(rgb: RGB) -> float:
    """Weighted channel mean in 0..255; no gamma correction."""
    return _R_WEIGHT * rgb[0] + _G_WEIGHT * rgb[1] + _B_WEIGHT * rgb[2]


def _linearise(channel: int) -> float:
    c = channel / 255.0
    if c <= 0.03928:
        return c / 12.92
    return ((c + 0.055) / 1.055) ** 2.4


def relative_luminance(rgb: RGB) -> float:
    """Gamma-corrected luminance in 0..1."""
    return (
        _R_WEIGHT * _linearise(rgb[0])
        + _G_WEIGHT * _linearise(rgb[1])
        + _B_WEIGHT * _linearise(rgb[2])
    )


def contrast_ratio(a: RGB, b: RGB) -> float:
    """Ratio of the lighter to the darker relative luminance, in 1..21."""
    la = relative_luminance(a)
    lb = relative_luminance(b)
    lighter, darker = max(la, lb), min(la, lb)
    return (lighter + 0.05) / (darker + 0.05)


@dataclass(frozen=True)
class ColorScheme:
    """Validated foreground/background pair applied to every text box."""

    foreground: RGB
    background: RGB

    @property
    def foreground_luma(self) -> float:
        return luma(self.foreground)

    @property
    def background_luma(self) -> float:
        return luma(self.background)

    def to_hex(self, rgb: RGB) -> str:
        return "#{:02x}{:02x}{:02x}".format(*rgb)


def make_scheme(
    foreground: RGB,
    background: RGB,
    min_contrast: float = DEFAULT_MIN_CONTRAST,
) -> ColorScheme:
    """Build a scheme, rejecting pairs below the minimum contrast ratio."""
    fg = _check_rgb(tuple(foreground), "foreground")
    bg = _check_rgb(tuple(background), "background")
    ratio = contrast_ratio(fg, bg)
    if ratio < min_contrast:
        raise ContrastError(
            f"contrast ratio {ratio:.2f} below required minimum {min_contrast:.2f}"
        )
    return ColorScheme(fg, bg)


DEFAULT_SCHEME = ColorScheme((0, 0, 0), (255, 255, 255))
