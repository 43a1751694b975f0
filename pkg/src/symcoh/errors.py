class StructureError(ValueError):
    """Input that is malformed: wrong shapes, missing entries, bad labels."""


class CapExceeded(RuntimeError):
    """An exhaustive search would exceed its configured budget."""

    def __init__(self, required, cap):
        super().__init__(f"search space of {required} candidates exceeds cap {cap}")
        self.required = required
        self.cap = cap
