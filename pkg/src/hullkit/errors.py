"""Exception hierarchy. Every error the engine raises deliberately is a
HullkitError; the service layer maps the subclasses onto HTTP statuses and
the CLI maps them onto exit codes."""


class HullkitError(Exception):
    pass


class ParseError(HullkitError):
    """Malformed input file or payload (bad JSON, bad shape, bad indices)."""


class DimensionError(HullkitError):
    """A table or map has the wrong size for its declared carrier."""


class ConstructionError(HullkitError):
    """A constructor was given data violating its axioms (non-associative
    table, linking map that is not a homomorphism, ...)."""


class PreconditionError(HullkitError):
    """An operation was called on data outside its contract (set not closed,
    not an ideal, maps not endomorphisms, generators not generating)."""


class NotACongruenceError(PreconditionError):
    """Partition not compatible with some operation; names the witness."""

    def __init__(self, op_name, args):
        self.op_name = op_name
        self.witness_args = tuple(args)
        super().__init__(
            "partition is not a congruence: op %r breaks on args %r"
            % (op_name, self.witness_args)
        )


class SizeRefusalError(HullkitError):
    """Instance exceeds a configured bound; nothing was computed."""


class TheoremViolationError(HullkitError):
    """A verified identity failed on concrete data. Always a bug (in the
    engine or in the input's claimed structure), never swallowed."""
