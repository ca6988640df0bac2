"""Exception hierarchy shared across the package."""


class EntailgenError(Exception):
    """Base class for all package errors."""


# --- markup layer ---

class NlmlError(EntailgenError):
    """Malformed or unacceptable sentence markup."""


class UnknownTag(NlmlError):
    def __init__(self, tag: str):
        super().__init__(f"unknown tag <{tag}>")
        self.tag = tag


class BadFeatureValue(NlmlError):
    def __init__(self, feature: str, value: str):
        super().__init__(f"bad value {value!r} for <{feature}>")
        self.feature = feature
        self.value = value


class MissingMood(NlmlError):
    def __init__(self):
        super().__init__("sentence has no <mood> element")


class ConflictingFlavor(NlmlError):
    def __init__(self, detail: str):
        super().__init__(f"conflicting flavor markers: {detail}")


class NotSupported(EntailgenError):
    """Sentence shape parses but is outside what the engine handles."""


# --- lexicon layer ---

class LexiconError(EntailgenError):
    pass


class BadRow(LexiconError):
    def __init__(self, path: str, line_no: int, detail: str):
        super().__init__(f"{path}:{line_no}: {detail}")
        self.line_no = line_no


class UnknownVerb(LexiconError):
    def __init__(self, lemma: str):
        super().__init__(f"unknown verb {lemma!r}")
        self.lemma = lemma


class NotPossessive(LexiconError):
    def __init__(self, word: str):
        super().__init__(f"{word!r} is not a possessive pronoun")
        self.word = word


# --- taxonomy layer ---

class TaxonomyError(EntailgenError):
    pass


class CycleDetected(TaxonomyError):
    def __init__(self, cycle: list):
        super().__init__("taxonomy cycle: " + " -> ".join(cycle))
        self.cycle = cycle


# --- surface text layer ---

class TextParseError(EntailgenError):
    pass


class OutOfCoverage(TextParseError):
    def __init__(self, reason: str):
        super().__init__(f"out of coverage: {reason}")
        self.reason = reason


class UnknownWord(TextParseError):
    def __init__(self, word: str):
        super().__init__(f"unknown word {word!r}")
        self.word = word


class IncompleteModel(EntailgenError):
    """Model cannot be realized as surface text (pseudo slots, missing parts)."""


# --- rule layer ---

class RuleError(EntailgenError):
    pass


class RuleParseError(RuleError):
    def __init__(self, detail: str, rule_id=None):
        super().__init__(detail if rule_id is None else f"rule {rule_id}: {detail}")
        self.rule_id = rule_id


class UnboundTemplateVariable(RuleError):
    def __init__(self, rule_id, index: int):
        super().__init__(f"rule {rule_id}: template uses pseudo index {index} "
                         "that the pattern never binds")
        self.rule_id = rule_id
        self.index = index


class BadReversedLink(RuleError):
    def __init__(self, rule_id, detail: str):
        super().__init__(f"rule {rule_id}: {detail}")
        self.rule_id = rule_id


# --- transformation layer ---

class TransformError(EntailgenError):
    pass


class MissingBinding(TransformError):
    def __init__(self, index: int):
        super().__init__(f"no binding for pseudo index {index}")
        self.index = index


class CaseChangeOnNonPronoun(TransformError):
    def __init__(self, fragment):
        super().__init__(
            f"cannot change case of non-pronoun possessive fragment {fragment!r}")
        self.fragment = fragment
