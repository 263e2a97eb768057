from typing import Optional


class AdvTextError(Exception):
    """Base error; `exit_code` is what the command line returns for it."""

    exit_code = 2

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class UsageError(AdvTextError):
    exit_code = 1


class UnknownComponentError(UsageError):
    pass


class UnsupportedComponentError(AdvTextError):
    """A recipe or token needs a language-model-backed component we do not ship."""

    def __init__(self, component: str, context: Optional[str] = None):
        where = f" (required by {context})" if context else ""
        super().__init__(f"Unsupported component {component}{where}: language-model-backed components are not available")
        self.component = component


class ResourceFormatError(AdvTextError):
    def __init__(self, path: str, line_number: int, reason: str):
        super().__init__(f"{path}:{line_number}: {reason}")
        self.path = path
        self.line_number = line_number


class ResourceMissingError(AdvTextError):
    pass


class TextEditError(AdvTextError, ValueError):
    pass


class GoalFunctionError(AdvTextError):
    pass


class CapabilityError(AdvTextError):
    pass


class DatasetError(AdvTextError):
    pass


class TrainingError(AdvTextError):
    pass


class ModelFormatError(AdvTextError):
    pass
