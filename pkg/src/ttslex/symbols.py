"""Bijection between token strings and integer labels."""

EPSILON = "<eps>"


def _escape(token):
    return token.replace("\\", "\\\\").replace("\t", "\\t").replace("\n", "\\n")


def _unescape(text):
    out = []
    chars = iter(text)
    for c in chars:
        if c == "\\":
            nxt = next(chars, "")
            out.append({"t": "\t", "n": "\n"}.get(nxt, nxt))
        else:
            out.append(c)
    return "".join(out)


class SymbolTable:
    """Ordered token <-> label map. Label 0 is always ``<eps>``.

    Tables grow as grammars are compiled (unknown tokens are inserted on
    first use) and are shared by every machine of one grammar set.
    """

    def __init__(self, tokens=()):
        self._tokens = [EPSILON]
        self._ids = {EPSILON: 0}
        for tok in tokens:
            self.add(tok)

    def add(self, token):
        label = self._ids.get(token)
        if label is None:
            label = len(self._tokens)
            self._tokens.append(token)
            self._ids[token] = label
        return label

    def find(self, token):
        """Label of ``token``; raises KeyError when absent."""
        return self._ids[token]

    def get(self, token, default=None):
        return self._ids.get(token, default)

    def lookup(self, label):
        return self._tokens[label]

    def labels(self):
        """All non-epsilon labels (the alphabet Sigma)."""
        return range(1, len(self._tokens))

    def __contains__(self, token):
        return token in self._ids

    def __len__(self):
        return len(self._tokens)

    def __iter__(self):
        return iter(enumerate(self._tokens))

    def __repr__(self):
        return f"SymbolTable({len(self._tokens)} symbols)"

    def encode(self, tokens):
        return [self.add(t) for t in tokens]

    def decode(self, labels):
        return [self._tokens[i] for i in labels if i]

    def to_text(self):
        return "".join(f"{_escape(tok)}\t{i}\n" for i, tok in enumerate(self._tokens))

    @classmethod
    def from_text(cls, text):
        pairs = []
        for n, line in enumerate(text.splitlines(), 1):
            if not line:
                continue
            tok, sep, num = line.rpartition("\t")
            if not sep:
                raise ValueError(f"symbol table line {n}: expected 'token<TAB>id'")
            pairs.append((int(num), _unescape(tok)))
        pairs.sort()
        table = cls()
        for i, tok in pairs:
            if i == 0:
                if tok != EPSILON:
                    raise ValueError("symbol id 0 must be <eps>")
                continue
            if i != len(table._tokens):
                raise ValueError(f"symbol ids must be dense; missing {len(table._tokens)}")
            table.add(tok)
        return table
