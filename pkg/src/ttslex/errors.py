"""Exception types raised across the toolkit."""


class TtslexError(Exception):
    """Base class; ``stage`` names the pipeline or tool step that failed."""

    stage = "ttslex"

    def __str__(self):
        return f"[{self.stage}] {super().__str__()}"


class SymbolTableMismatch(TtslexError):
    stage = "fst"


class NoAcceptingPath(TtslexError):
    stage = "bestpath"


class ParseError(TtslexError):
    stage = "parse"

    def __init__(self, message, line=None, column=None, source=None):
        self.line = line
        self.column = column
        self.source = source
        where = []
        if source:
            where.append(str(source))
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"col {column}")
        prefix = ":".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)


class CompileError(TtslexError):
    stage = "compile"


class CoverageError(CompileError):
    """A number lexicon failed to cover some factorizer input."""

    def __init__(self, message, witness):
        self.witness = witness
        super().__init__(f"{message} (witness: {witness!r})")


class NoAnalysis(TtslexError):
    stage = "analyze"

    def __init__(self, offset, substring):
        self.offset = offset
        self.substring = substring
        super().__init__(f"no analysis for {substring!r} at offset {offset}")


class EmptyAfterFiltering(TtslexError):
    stage = "disambiguate"


class NoPronunciation(TtslexError):
    stage = "pronounce"

    def __init__(self, mma):
        self.mma = mma
        super().__init__(f"no pronunciation for {mma!r}")
