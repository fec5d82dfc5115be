class FanoVerifyException(Exception):
    """
    Raised when fanoverify detects an issue.
    """

    pass


class ParseError(FanoVerifyException):
    """
    Raised when a polynomial or weight expression cannot be parsed. The
    character offset of the problem is kept in `position`.
    """

    def __init__(self, message, text, position):
        self.text = text
        self.position = position
        super().__init__(
            "{} at position {} in '{}'".format(message, position, text.strip())
        )


class DatasetError(FanoVerifyException):
    """
    Raised when a dataset file violates its schema or references something
    that does not exist.
    """

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        location = ""
        if path is not None:
            location = "{}".format(path)
            if line is not None:
                location += ":{}".format(line)
            location += ": "
        super().__init__("{}{}".format(location, message))


class BudgetExceeded(FanoVerifyException):
    """
    Raised inside the Groebner engine when the pair or degree cap is hit.
    Callers turn this into an inconclusive answer.
    """

    pass


class ExtensionTooLarge(FanoVerifyException):
    """
    Raised when a point needs a field extension of larger degree than the
    configured maximum.
    """

    pass
