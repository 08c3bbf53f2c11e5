"""Exception hierarchy.

Every error carries an ``exit_code`` so the command line front end can map
failures onto its stable contract: 2 for bad input or configuration, 1 for
runtime and numerical failures.
"""


class GiniRocError(Exception):
    exit_code = 1


class InputError(GiniRocError, ValueError):
    """Input data or configuration is invalid."""

    exit_code = 2


class InputSchemaError(InputError):
    pass


class CsvParseError(InputError):
    def __init__(self, message, row=None, column=None):
        where = []
        if row is not None:
            where.append(f"row {row}")
        if column is not None:
            where.append(f"column {column!r}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)
        self.row = row
        self.column = column


class LabelVocabularyError(InputError):
    pass


class DataValidationError(InputError):
    pass


class ShapeError(InputError):
    pass


class InsufficientDataError(InputError):
    pass


class DomainError(InputError):
    pass


class ConfigError(InputError):
    pass


class ComparabilityError(InputError):
    pass


class NumericalError(GiniRocError, ArithmeticError):
    """A computation is undefined or numerically unstable for the given data."""


class DegenerateInputError(NumericalError):
    pass


class UndefinedGiniError(NumericalError):
    def __init__(self, message, class_name=None):
        if class_name is not None:
            message = f"class {class_name!r}: {message}"
        super().__init__(message)
        self.class_name = class_name


class UndefinedWeightsError(NumericalError):
    pass


class EmptyClassError(NumericalError):
    def __init__(self, message, class_index=None, class_name=None):
        super().__init__(message)
        self.class_index = class_index
        self.class_name = class_name


class NoSignalError(NumericalError):
    pass


class ReportWriteError(GiniRocError, OSError):
    pass
