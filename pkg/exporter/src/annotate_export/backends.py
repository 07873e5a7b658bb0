"""Annotation backends.

SpacyBackend wraps an installed spaCy pipeline (the production choice;
name and version are pinned into the export manifest). BuiltinBackend is a
deterministic, dependency-free heuristic annotator: a regex tokenizer,
lexicon+suffix POS tagger, shape/gazetteer entity matcher, pattern noun
chunker and a flat head assigner. It exists so that fixture corpora can be
annotated offline and reproducibly; it is not a substitute for a trained
pipeline on real data.

Both return, per paragraph, the dict shape of one annotation JSON-Lines
record minus the paragraph_id: tokens (text/start/end/pos/tag/dep/head),
entities, noun_chunks and sentences (token-index spans).
"""

from __future__ import annotations

import re

NOMINAL = {"NOUN", "PROPN", "PRON", "NUM"}

_TOKEN_RE = re.compile(
    r"\d+(?:[.,]\d+)*"          # 1745, 20.8, 87,600
    r"|[^\W\d_]+(?:-[^\W\d_]+)*"  # words, keeping internal hyphens
    r"|'(?:s|re|ve|ll|d|m)\b"     # clitics
    r"|\S",                       # any other single character
    re.UNICODE,
)

_NUM_RE = re.compile(r"\d+(?:[.,]\d+)*$")
_ORDINAL_NUM_RE = re.compile(r"\d+(?:st|nd|rd|th)$")

DETS = {
    "the", "a", "an", "this", "that", "these", "those", "each", "every",
    "some", "any", "no", "both", "all", "many", "few", "several", "other",
    "another", "such",
}
ADPS = {
    "of", "in", "on", "at", "by", "with", "from", "for", "as", "into", "about",
    "after", "before", "between", "during", "over", "under", "through",
    "against", "within", "without", "near", "across", "along", "around",
    "among", "upon", "per", "via", "since", "until", "off", "above", "below",
    "behind", "beside", "toward", "towards", "inside", "outside", "than",
    "up", "aboard",
}
CCONJS = {"and", "or", "but", "nor", "yet"}
SCONJS = {
    "because", "although", "though", "while", "if", "when", "whereas",
    "unless", "that", "whether", "where",
}
PRONS = {
    "he", "she", "it", "they", "we", "i", "you", "him", "her", "them", "us",
    "me", "his", "hers", "theirs", "its", "who", "which", "whom", "whose",
    "itself", "himself", "herself", "themselves",
}
AUXES = {
    "is", "are", "was", "were", "be", "been", "being", "am",
    "has", "have", "had", "having",
    "can", "could", "will", "would", "may", "might", "must", "shall", "should",
    "do", "does", "did", "cannot",
}
PARTS = {"to", "not"}
ADVS = {
    "very", "also", "however", "thus", "often", "never", "always", "here",
    "there", "now", "then", "only", "almost", "about", "approximately",
    "roughly", "just", "still", "later", "earlier", "together", "readily",
    "highly", "most", "more", "quite", "rather", "nearly", "especially",
    "particularly", "notably", "eventually", "finally", "originally",
    "internationally", "significantly", "largely", "mainly", "mostly",
    "primarily", "widely", "today", "yesterday", "once", "twice", "again",
    "ago", "away", "back", "far", "further", "instead", "perhaps", "soon",
    "well", "alone", "independently", "commonly", "officially",
    "substantially", "briefly",
}
NUMBER_WORDS = set(
    """zero one two three four five six seven eight nine ten eleven twelve
    thirteen fourteen fifteen sixteen seventeen eighteen nineteen twenty
    thirty forty fifty sixty seventy eighty ninety
    hundred thousand million billion trillion""".split()
)
ORDINAL_WORDS = {
    "first", "second", "third", "fourth", "fifth", "sixth", "seventh",
    "eighth", "ninth", "tenth", "eleventh", "twelfth", "twentieth",
    "hundredth", "thousandth",
}

# verb stems for disambiguating -s / -ed / -ing forms and bare forms
VERB_STEMS = {
    "absorb", "achieve", "act", "adapt", "add", "allow", "appear", "attract",
    "become", "begin", "bind", "border", "breed", "bring", "build", "call",
    "carry", "celebrate", "change", "climb", "coin", "collapse", "collect",
    "come", "complete", "compose", "connect", "consist", "constitute",
    "contain", "continue", "convert", "cover", "create", "cross", "decode",
    "demolish", "describe", "design", "destroy", "develop", "die",
    "discover", "divide", "draw", "drive", "earn", "emit", "employ",
    "establish", "estimate", "exist", "expand", "extend", "extract", "face",
    "fall", "feature", "fight", "find", "finish", "flow", "fly", "follow",
    "forage", "form", "found", "gather", "generate", "give", "go", "grow",
    "happen", "help", "hold", "host", "house", "include", "increase",
    "invent", "involve", "join", "keep", "know", "land", "last", "lay",
    "lead", "learn", "leave", "lie", "link", "live", "locate", "look",
    "lose", "maintain", "make", "mark", "mean", "measure", "meet", "move",
    "name", "note", "observe", "occur", "open", "operate", "orbit", "part",
    "pass", "perform", "place", "plan", "play", "power", "produce",
    "propose", "protect", "prove", "provide", "publish", "rank", "reach",
    "rebuild", "receive", "recognize", "record", "reflect", "regard",
    "release", "remain", "represent", "require", "return", "ride", "rise",
    "run", "save", "say", "see", "select", "sell", "serve", "set", "show",
    "sit", "span", "spend", "spread", "stand", "start", "state", "stop",
    "store", "stretch", "strike", "study", "supply", "support", "surround",
    "take", "teach", "tell", "think", "treat", "trigger", "turn", "use",
    "visit", "watch", "win", "work", "write",
}
IRREGULAR_PAST = {
    "was", "were", "been", "had", "did", "went", "made", "found", "held",
    "won", "took", "gave", "grew", "drew", "flew", "led", "left", "lost",
    "met", "ran", "saw", "said", "sat", "set", "sold", "spent", "stood",
    "told", "thought", "wrote", "became", "began", "brought", "built",
    "rebuilt", "came", "fought", "kept", "knew", "laid", "lay", "rose",
    "fell", "struck", "taught", "born", "begun", "known", "grown", "drawn",
    "seen", "given", "taken", "written", "spoken", "broken", "chosen",
    "driven",
}

ADJ_SUFFIXES = ("ous", "ive", "ful", "ic", "ical", "al", "ar", "able", "ible", "ant", "ent", "less", "ish", "est", "ern")
NOUN_SUFFIXES = ("tion", "sion", "ment", "ness", "ity", "ship", "ism", "ist", "ance", "ence", "ure", "age", "hood")
# common nouns the adjective suffix rules would otherwise claim
NOUN_OVERRIDES = {
    "general", "recipient", "capital", "material", "metal", "nonmetal",
    "percent", "continent", "president", "resident", "total", "animal",
}

TIME_UNITS = {
    "year", "years", "month", "months", "week", "weeks", "day", "days",
    "decade", "decades", "century", "centuries", "hour", "hours",
    "minute", "minutes",
}
MONTHS = {
    "january", "february", "march", "april", "may", "june", "july",
    "august", "september", "october", "november", "december",
}

# label by lowercased phrase; matched only when every word is capitalized
GAZETTEER: dict[tuple[str, ...], str] = {}


def _gaz(label: str, *phrases: str):
    for phrase in phrases:
        GAZETTEER[tuple(phrase.lower().split())] = label


_gaz(
    "PERSON",
    "Maria Skłodowska-Curie", "Marie Curie", "Pierre Curie", "Curie",
    "Władysław Szpilman", "Frédéric Chopin", "Chopin", "Casimir Pulaski",
    "Nikola Tesla", "Tesla", "Thomas Edison", "Edison", "Edward Sorin",
    "Alexander Fleming", "Fleming", "James Watt", "Edmund Hillary",
    "Tenzing Norgay", "Joseph Priestley", "Carl Wilhelm Scheele",
    "Neil Armstrong", "Buzz Aldrin", "Michael Collins", "Gustave Eiffel",
    "Howard Florey", "Ernst Chain", "George Westinghouse",
    "Antoine Lavoisier", "Karl von Frisch", "Virgin Mary",
    "Saint Bernadette Soubirous",
)
_gaz(
    "GPE",
    "Warsaw", "Poland", "Żelazowa Wola", "Paris", "France", "Nepal", "China",
    "Tibet", "Australia", "Queensland", "England", "London", "Smiljan",
    "Croatia", "United States", "New York", "Brazil", "Peru", "Colombia",
    "Indiana", "Sweden", "Uppsala", "Germany", "Chicago", "Graz",
    "Great Britain", "Kraków", "Lourdes", "South Bend",
)
_gaz(
    "LOC",
    "Vistula", "Amazon", "Amazon River", "Mount Everest", "Everest",
    "Himalayas", "Great Barrier Reef", "Coral Sea", "Danube", "Black Sea",
    "Black Forest", "Europe", "South America", "Asia", "Earth", "Moon",
    "Sun", "Jupiter", "Mercury", "Venus", "Mars", "Saturn", "Uranus",
    "Neptune", "Atlantic Ocean",
)
_gaz(
    "ORG",
    "University of Notre Dame", "Notre Dame", "NASA",
    "Congregation of Holy Cross",
)
_gaz("ELEMENT", "Oxygen", "Hydrogen", "Helium", "Polonium", "Radium", "Carbon", "Nitrogen")
_gaz(
    "MISC",
    "Nobel Prize", "Nobel Prizes", "World War II", "American Revolutionary War",
    "Industrial Revolution", "Apollo 11", "Penicillium", "Main Building",
    "Basilica of the Sacred Heart", "Grotto", "Old Town", "Eiffel Tower",
    "Chrysler Building", "World Heritage Site",
)

# lowercase function words and digit tokens allowed inside gazetteer matches
_GAZ_GLUE = {"of", "the", "von", "-", "'s"}


def tokenize(text: str) -> list[dict]:
    tokens = []
    for m in _TOKEN_RE.finditer(text):
        tokens.append({"text": m.group(), "start": m.start(), "end": m.end()})
    return tokens


def split_sentences(tokens: list[dict]) -> list[tuple[int, int]]:
    """Inclusive token-index sentence spans; boundary after . ! ? when the
    next token starts with an uppercase letter or a digit."""
    if not tokens:
        return []
    spans = []
    start = 0
    for i, tok in enumerate(tokens):
        is_last = i == len(tokens) - 1
        if tok["text"] in {".", "!", "?"} and not is_last:
            nxt = tokens[i + 1]["text"]
            if nxt[:1].isupper() or nxt[:1].isdigit():
                spans.append((start, i))
                start = i + 1
    spans.append((start, len(tokens) - 1))
    return spans


def _is_capitalized(word: str) -> bool:
    return bool(word) and word[0].isupper()


def _past_stem_matches(lower: str) -> bool:
    if not lower.endswith("ed"):
        return False
    candidates = [lower[:-2], lower[:-1]]
    if lower.endswith("ied"):
        candidates.append(lower[:-3] + "y")
    if len(lower) > 4 and lower[-3] == lower[-4]:
        candidates.append(lower[:-3])  # doubled consonant: stopped -> stop
    return any(c in VERB_STEMS for c in candidates)


def _gerund_stem_matches(lower: str) -> bool:
    if not lower.endswith("ing"):
        return False
    candidates = [lower[:-3], lower[:-3] + "e"]
    if len(lower) > 5 and lower[-4] == lower[-5]:
        candidates.append(lower[:-4])
    return any(c in VERB_STEMS for c in candidates)


def _suffix_tag(lower: str, prev_pos: str | None) -> tuple[str, str]:
    """Open-class guess from suffix shape; `prev_pos` settles noun/verb
    ambiguity for regular verb forms (a determiner or modifier to the left
    means a nominal reading)."""
    if lower.endswith("ly"):
        return "ADV", "RB"
    if lower in NOUN_OVERRIDES:
        return "NOUN", "NN"
    for suf in NOUN_SUFFIXES:  # before ADJ: "-ment" must beat "-ent"
        if lower.endswith(suf) and len(lower) > len(suf) + 1:
            return "NOUN", "NN"
    for suf in ADJ_SUFFIXES:
        if lower.endswith(suf) and len(lower) > len(suf) + 2:
            return "ADJ", "JJ"
    if _past_stem_matches(lower):
        return "VERB", "VBD"
    if lower.endswith("ing"):
        if prev_pos in ("DET", "ADJ", "NOUN", "PROPN", "NUM", "PRON"):
            return "NOUN", "NN"
        if _gerund_stem_matches(lower):
            return "VERB", "VBG"
        return "NOUN", "NN"
    if lower.endswith("s") and not lower.endswith("ss"):
        stem_hit = lower[:-1] in VERB_STEMS or (
            lower.endswith("es") and lower[:-2] in VERB_STEMS
        )
        if stem_hit and prev_pos not in ("DET", "ADJ", "NUM"):
            return "VERB", "VBZ"
        return "NOUN", "NNS"
    if lower in VERB_STEMS and prev_pos not in ("DET", "ADJ", "NUM", "PROPN"):
        return "VERB", "VB"
    return "NOUN", "NN"


def tag(tokens: list[dict], sentences: list[tuple[int, int]]) -> None:
    """Assign pos/tag in place."""
    sentence_initial = {first for first, _ in sentences}
    mid_capitalized = {
        t["text"]
        for i, t in enumerate(tokens)
        if i not in sentence_initial and _is_capitalized(t["text"])
    }
    for i, tok in enumerate(tokens):
        text = tok["text"]
        lower = text.lower()
        if _NUM_RE.fullmatch(text):
            pos, fine = "NUM", "CD"
        elif text in {"'s", "'"}:
            pos, fine = "PART", "POS"
        elif text in {"'re", "'ve", "'ll", "'d", "'m"}:
            pos, fine = "AUX", "VBP"
        elif not any(ch.isalnum() for ch in text):
            if text == "%" or any(0x20A0 <= ord(ch) <= 0x20CF or ch in "$£€¥" for ch in text):
                pos, fine = "SYM", "SYM"
            else:
                pos, fine = "PUNCT", "PUNCT"
        elif lower in DETS:
            pos, fine = "DET", "DT"
        elif lower in ADPS:
            pos, fine = "ADP", "IN"
        elif lower in CCONJS:
            pos, fine = "CCONJ", "CC"
        elif lower in SCONJS:
            pos, fine = "SCONJ", "IN"
        elif lower in PRONS:
            pos, fine = "PRON", "PRP"
        elif lower in AUXES:
            pos, fine = "AUX", "VBZ" if lower.endswith("s") else "VB"
        elif lower in PARTS:
            pos, fine = "PART", "TO" if lower == "to" else "RB"
        elif lower in ADVS:
            pos, fine = "ADV", "RB"
        elif lower in NUMBER_WORDS:
            pos, fine = "NUM", "CD"
        elif lower in ORDINAL_WORDS:
            pos, fine = "ADJ", "JJ"
        elif lower in IRREGULAR_PAST:
            pos, fine = "VERB", "VBD"
        elif _is_capitalized(text) and i not in sentence_initial:
            pos, fine = "PROPN", "NNP"
        elif (
            _is_capitalized(text)
            and i in sentence_initial
            and (text in mid_capitalized or tuple([lower]) in GAZETTEER)
        ):
            pos, fine = "PROPN", "NNP"
        else:
            prev_pos = tokens[i - 1]["pos"] if i > 0 else None
            pos, fine = _suffix_tag(lower, prev_pos)
        tok["pos"] = pos
        tok["tag"] = fine


def _assign_heads(tokens: list[dict], first: int, last: int) -> None:
    """Flat single-rooted dependency structure within one sentence."""
    idxs = list(range(first, last + 1))
    root = next((i for i in idxs if tokens[i]["pos"] in ("VERB", "AUX")), None)
    if root is None:
        root = next((i for i in idxs if tokens[i]["pos"] in ("NOUN", "PROPN")), first)
    root_is_verb = tokens[root]["pos"] == "VERB"

    def next_with(i, poses):
        for j in range(i + 1, last + 1):
            if tokens[j]["pos"] in poses:
                return j
        return None

    def prev_with(i, poses):
        for j in range(i - 1, first - 1, -1):
            if tokens[j]["pos"] in poses:
                return j
        return None

    for i in idxs:
        tok = tokens[i]
        pos = tok["pos"]
        if i == root:
            tok["head"], tok["dep"] = i, "ROOT"
        elif pos == "PUNCT":
            tok["head"], tok["dep"] = root, "punct"
        elif pos == "DET":
            j = next_with(i, NOMINAL)
            tok["head"], tok["dep"] = (j, "det") if j is not None else (root, "det")
        elif pos == "ADJ":
            j = next_with(i, NOMINAL)
            tok["head"], tok["dep"] = (j, "amod") if j is not None else (root, "amod")
        elif pos == "NUM":
            j = next_with(i, {"NOUN", "PROPN"})
            tok["head"], tok["dep"] = (j, "nummod") if j is not None and j == i + 1 else (root, "nummod")
        elif pos == "ADV":
            j = next_with(i, {"VERB", "ADJ", "AUX"})
            tok["head"], tok["dep"] = (j, "advmod") if j is not None else (root, "advmod")
        elif pos in ("ADP", "SCONJ"):
            j = prev_with(i, {"NOUN", "PROPN", "PRON", "VERB", "AUX", "NUM"})
            tok["head"], tok["dep"] = (j, "prep") if j is not None else (root, "prep")
        elif pos == "PART":
            if tok["tag"] == "POS":
                j = prev_with(i, NOMINAL)
                tok["head"], tok["dep"] = (j, "case") if j is not None else (root, "case")
            else:
                j = next_with(i, {"VERB", "AUX"})
                tok["head"], tok["dep"] = (j, "mark") if j is not None else (root, "mark")
        elif pos == "AUX":
            tok["head"], tok["dep"] = root, ("aux" if root_is_verb else "cop")
        elif pos == "CCONJ":
            tok["head"], tok["dep"] = root, "cc"
        elif pos == "VERB":
            tok["head"], tok["dep"] = root, "conj"
        else:  # nominals and symbols
            prev_adp = prev_with(i, {"ADP"})
            prev_blocker = prev_with(i, {"VERB", "AUX", "NOUN", "PROPN", "PRON"})
            if prev_adp is not None and (prev_blocker is None or prev_adp > prev_blocker):
                tok["head"], tok["dep"] = prev_adp, "pobj"
            elif i < root:
                tok["head"], tok["dep"] = root, "nsubj"
            elif i + 1 <= last and tokens[i + 1]["pos"] in ("NOUN", "PROPN"):
                tok["head"], tok["dep"] = i + 1, "compound"
            else:
                tok["head"], tok["dep"] = root, ("dobj" if root_is_verb else "attr")


def _entity_spans(tokens: list[dict], sentences: list[tuple[int, int]]) -> list[dict]:
    n = len(tokens)
    taken = [False] * n
    spans: list[dict] = []

    def claim(first: int, last: int, label: str) -> bool:
        if any(taken[first : last + 1]):
            return False
        for k in range(first, last + 1):
            taken[k] = True
        spans.append({"first_tok": first, "last_tok": last, "label": label})
        return True

    lowers = [t["text"].lower() for t in tokens]

    # gazetteer phrases, longest first; every word capitalized (or glue)
    by_length = sorted(GAZETTEER.items(), key=lambda kv: -len(kv[0]))
    for i in range(n):
        for phrase, label in by_length:
            j = i + len(phrase) - 1
            if j >= n or tuple(lowers[i : j + 1]) != phrase:
                continue
            if all(
                _is_capitalized(t["text"]) or t["text"].isdigit() or t["text"].lower() in _GAZ_GLUE
                for t in tokens[i : j + 1]
            ):
                claim(i, j, label)
                break

    for i, tok in enumerate(tokens):
        text = tok["text"]
        lower = lowers[i]
        if taken[i]:
            continue
        # money: currency symbol + number
        if tok["pos"] == "SYM" and text != "%" and i + 1 < n and tokens[i + 1]["pos"] == "NUM":
            claim(i, i + 1, "MONEY")
        # percent: number + % (or "percent")
        elif tok["pos"] == "NUM" and i + 1 < n and lowers[i + 1] in ("%", "percent"):
            claim(i, i + 1, "PERCENT")
        # dates: day/month/year groups, plain years, quantity + time unit
        elif lower in MONTHS and _is_capitalized(text):
            first = i
            if i > 0 and tokens[i - 1]["pos"] == "NUM" and not taken[i - 1] and lowers[i - 1].isdigit() and int(lowers[i - 1]) <= 31:
                first = i - 1
            j = i
            while j + 1 < n and tokens[j + 1]["pos"] == "NUM" and not taken[j + 1]:
                j += 1
            claim(first, j, "DATE")
        elif tok["pos"] == "NUM" and text.isdigit() and 1000 <= int(text) <= 2100:
            claim(i, i, "DATE")
        elif tok["pos"] == "NUM" and i + 1 < n and lowers[i + 1] in TIME_UNITS:
            j = i + 1
            if j + 1 < n and lowers[j + 1] == "old":
                j += 1
            claim(i, j, "DATE")
        elif lower in ORDINAL_WORDS or _ORDINAL_NUM_RE.fullmatch(lower):
            claim(i, i, "ORDINAL")
        elif tok["pos"] == "NUM":
            j = i
            while j + 1 < n and tokens[j + 1]["pos"] == "NUM" and not taken[j + 1]:
                j += 1
            claim(i, j, "CARDINAL")

    # remaining capitalized PROPN runs
    sentence_initial = {first for first, _ in sentences}
    i = 0
    while i < n:
        if tokens[i]["pos"] == "PROPN" and not taken[i] and (
            i not in sentence_initial or _is_capitalized(tokens[i]["text"])
        ):
            j = i
            while j + 1 < n and tokens[j + 1]["pos"] == "PROPN" and not taken[j + 1]:
                j += 1
            claim(i, j, "MISC")
            i = j + 1
        else:
            i += 1

    spans.sort(key=lambda s: s["first_tok"])
    return spans


def _chunk_spans(tokens: list[dict]) -> list[dict]:
    """Maximal runs of determiner/adjective/nominal tokens (plus possessive
    clitics, chunk-internal hyphens handled by the tokenizer, trailing %,
    and adverbs directly modifying what follows), containing a nominal."""
    n = len(tokens)
    spans = []
    i = 0

    def chunkable(j: int) -> bool:
        pos = tokens[j]["pos"]
        text = tokens[j]["text"]
        if pos in ("DET", "ADJ", "NOUN", "PROPN", "NUM", "PRON"):
            return True
        if pos == "PART" and tokens[j]["tag"] == "POS":
            return True
        if text == "%":
            return True
        if pos == "ADV" and j + 1 < n and tokens[j + 1]["pos"] in ("ADJ", "NOUN", "PROPN", "NUM"):
            return True
        return False

    while i < n:
        if not chunkable(i):
            i += 1
            continue
        j = i
        while j + 1 < n and chunkable(j + 1):
            j += 1
        # trim: cannot start on a possessive/%; cannot end on DET/ADJ/ADV/POS
        first, last = i, j
        while first <= last and (
            tokens[first]["pos"] == "PART" or tokens[first]["text"] == "%"
        ):
            first += 1
        while last >= first and (
            tokens[last]["pos"] in ("DET", "ADJ", "ADV")
            or tokens[last]["tag"] == "POS"
        ):
            last -= 1
        if first <= last and any(tokens[k]["pos"] in NOMINAL for k in range(first, last + 1)):
            spans.append({"first_tok": first, "last_tok": last, "label": "NCH"})
        i = j + 1
    return spans


class BuiltinBackend:
    name = "builtin-heuristic"
    version = "0.1.0"

    def annotate(self, text: str) -> dict:
        tokens = tokenize(text)
        sentences = split_sentences(tokens)
        tag(tokens, sentences)
        for first, last in sentences:
            _assign_heads(tokens, first, last)
        entities = _entity_spans(tokens, sentences)
        chunks = _chunk_spans(tokens)
        return {
            "tokens": tokens,
            "entities": entities,
            "noun_chunks": chunks,
            "sentences": [
                {"first_tok": first, "last_tok": last, "label": "SENT"}
                for first, last in sentences
            ],
        }

    def tagset(self) -> dict:
        return {"pos": "UPOS-like (heuristic)", "tag": "PTB-like (heuristic)", "dep": "UD-like (heuristic)"}


class SpacyBackend:
    """Wraps an installed spaCy pipeline. Import is lazy so the exporter
    works without spaCy when only the builtin backend is needed."""

    def __init__(self, model_name: str = "en_core_web_sm"):
        import spacy  # deferred: heavyweight, optional

        self._nlp = spacy.load(model_name)
        meta = self._nlp.meta
        self.name = f"spacy/{model_name}"
        self.version = f"{spacy.__version__}/{meta.get('version', 'unknown')}"

    def annotate(self, text: str) -> dict:
        doc = self._nlp(text)
        idx = {tok.i: k for k, tok in enumerate(doc)}
        tokens = [
            {
                "text": tok.text,
                "start": tok.idx,
                "end": tok.idx + len(tok.text),
                "pos": tok.pos_,
                "tag": tok.tag_,
                "dep": tok.dep_,
                "head": idx[tok.head.i],
            }
            for tok in doc
        ]
        return {
            "tokens": tokens,
            "entities": [
                {"first_tok": idx[e.start], "last_tok": idx[e.end - 1], "label": e.label_}
                for e in doc.ents
            ],
            "noun_chunks": [
                {"first_tok": idx[c.start], "last_tok": idx[c.end - 1], "label": "NCH"}
                for c in doc.noun_chunks
            ],
            "sentences": [
                {"first_tok": idx[s.start], "last_tok": idx[s.end - 1], "label": "SENT"}
                for s in doc.sents
            ],
        }

    def tagset(self) -> dict:
        return {"pos": "UPOS", "tag": "PTB", "dep": "UD (spaCy)"}


def make_backend(kind: str, spacy_model: str = "en_core_web_sm"):
    if kind == "builtin":
        return BuiltinBackend()
    if kind == "spacy":
        return SpacyBackend(spacy_model)
    raise ValueError(f"unknown backend {kind!r}")
