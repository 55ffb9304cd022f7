class SalemValidationException(Exception):
    def __init__(self, *args: object) -> None:
        super().__init__(*args)

class SalemIllegalStateException(Exception):
    def __init__(self, *args: object) -> None:
        super().__init__(*args)

class SalemBudgetException(Exception):
    """Raised when an ambient, oracle or census would exceed the configured budget."""
    def __init__(self, *args: object) -> None:
        super().__init__(*args)
