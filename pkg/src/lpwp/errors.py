"""Exception hierarchy for the toolkit."""


class ToolkitError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(ToolkitError):
    """Input data violates a schema or structural invariant."""

    def __init__(self, message, *, line=None, field=None):
        self.line = line
        self.field = field
        parts = []
        if line is not None:
            parts.append(f"line {line}")
        if field is not None:
            parts.append(f"field {field}")
        prefix = f"[{', '.join(parts)}] " if parts else ""
        super().__init__(prefix + message)


class UnsupportedDeclarationError(ValidationError):
    """A gold record uses a declaration type the toolkit does not model."""

    def __init__(self, type_string, **kw):
        self.type_string = type_string
        super().__init__(f"unsupported declaration type: {type_string!r}", **kw)


class IrParseError(ToolkitError):
    """Strict-mode parse failure, with the character position of the fault."""

    def __init__(self, message, position):
        self.position = position
        super().__init__(f"char {position}: {message}")


class MappingError(ToolkitError):
    """A variable surface name does not resolve in the order mapping."""


class StructureError(ToolkitError):
    """Declarations do not form a well-shaped program (e.g. no objective)."""
