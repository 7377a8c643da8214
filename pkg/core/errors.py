"""
例外類別
"""


class SplicingToolkitError(Exception):
    """所有工具錯誤的基底類別，命令列會把它轉成 exit 2"""


class InvalidRuleError(SplicingToolkitError, ValueError):
    pass


class InvalidSystemError(SplicingToolkitError, ValueError):
    pass


class SpliceError(SplicingToolkitError, ValueError):
    pass


class ModeMismatchError(SplicingToolkitError, ValueError):
    pass


class PatternError(SplicingToolkitError, ValueError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (token {position})"
        super().__init__(message)


class GrammarError(SplicingToolkitError, ValueError):
    pass


class NormalFormError(GrammarError):
    def __init__(self, form, violations):
        self.form = form
        self.violations = list(violations)
        details = "; ".join(str(v) for v in self.violations)
        super().__init__(f"grammar is not in {form} form: {details}")


class UnmappedLabelError(SplicingToolkitError, KeyError):
    def __init__(self, label):
        self.label = label
        super().__init__(label)

    def __str__(self):
        return f"homomorphism has no image for label {self.label!r}"


class CompilationError(SplicingToolkitError, ValueError):
    pass


class FormatError(SplicingToolkitError, ValueError):
    def __init__(self, message, line=None, column=None, source='<text>'):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        super().__init__(self.__str__())

    def __str__(self):
        if self.line is None:
            return f"{self.source}: {self.message}"
        return f"{self.source}:{self.line}:{self.column or 1}: {self.message}"


class SearchAbortedError(SplicingToolkitError, RuntimeError):
    pass
