"""Exception hierarchy for the library.

The CLI maps these to process exit codes: ConfigError -> 2,
ResourceError -> 3, anything else raised from library code -> 1.
"""


class BroadsideError(Exception):
    """Base class for all library errors."""


class ConfigError(BroadsideError):
    """A configuration value or input document is invalid."""


class ResourceError(BroadsideError):
    """A bundled or user-supplied resource file is missing or unreadable."""


class SchemaError(ConfigError):
    """A document is missing a required key or has a value of the wrong type."""


class RangeError(ConfigError):
    """A numeric value falls outside its permitted range."""


class UnknownTypeface(ConfigError):
    """A genotype references a typeface id absent from the catalog."""


class ContrastError(ConfigError):
    """Foreground/background colours fall below the minimum contrast ratio."""


class EmptyCatalog(ConfigError):
    """A font catalog ended up with no faces."""


class DegenerateRange(ConfigError):
    """A (minimum, maximum) pair is empty or inverted."""


class DuplicateId(ResourceError):
    """Two catalog entries declare the same face id."""


class FontParseError(ResourceError):
    """A face file could not be parsed into a usable record."""


class LexiconParseError(ResourceError):
    """The emotion lexicon file is malformed."""


class UnsupportedLanguage(ResourceError):
    """No stopword list is bundled for the requested language."""


class ProfileMismatch(BroadsideError):
    """An emotion profile does not describe the lines being evaluated."""


class MismatchedLines(BroadsideError):
    """Two genotypes carry different line texts and cannot be recombined."""


class EmptyStats(BroadsideError):
    """A statistics log has too few rows to chart."""
