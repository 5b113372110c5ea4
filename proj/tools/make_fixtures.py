#!/usr/bin/env python3
"""Regenerates the CoNLL-U and TSV fixtures under tests/fixtures.

The annotations are written by hand in the tables below; this script only
expands templates and numbers the tokens. Run from the repository root.
"""

import itertools
import pathlib

ROOT = pathlib.Path(__file__).resolve().parent.parent
OUT = ROOT / "tests" / "fixtures"


class Tok:
    def __init__(self, form, lemma, upos, head, deprel, feats="_", space=True, xpos="_"):
        self.form, self.lemma, self.upos = form, lemma, upos
        self.head, self.deprel, self.feats = head, deprel, feats
        self.space, self.xpos = space, xpos


def text_of(toks):
    out = []
    for i, t in enumerate(toks):
        out.append(t.form)
        if i + 1 < len(toks) and t.space:
            out.append(" ")
    return "".join(out)


def block(toks, comments=(), ranges=()):
    """ranges: (first, last, surface, space_after) multiword lines."""
    lines = list(comments)
    lines.append("# text = " + text_of_surface(toks, ranges))
    starts = {r[0]: r for r in ranges}
    for i, t in enumerate(toks, 1):
        if i in starts:
            first, last, surface, space = starts[i]
            misc = "_" if space else "SpaceAfter=No"
            lines.append(f"{first}-{last}\t{surface}\t_\t_\t_\t_\t_\t_\t_\t{misc}")
        misc = "_" if t.space else "SpaceAfter=No"
        lines.append("\t".join([str(i), t.form, t.lemma, t.upos, t.xpos, t.feats,
                                str(t.head), t.deprel, "_", misc]))
    return "\n".join(lines) + "\n\n"


def text_of_surface(toks, ranges):
    if not ranges:
        return text_of(toks)
    starts = {r[0]: r for r in ranges}
    out, i = [], 1
    while i <= len(toks):
        if i in starts:
            first, last, surface, space = starts[i]
            out.append(surface)
            if last < len(toks) and space:
                out.append(" ")
            i = last + 1
            continue
        t = toks[i - 1]
        out.append(t.form)
        if i < len(toks) and t.space:
            out.append(" ")
        i += 1
    return "".join(out)


def cap(s):
    return s[:1].upper() + s[1:]


# ---------------------------------------------------------------- French UD

ART_M = "Definite=Def|Gender=Masc|Number=Sing|PronType=Art"
ART_F = "Definite=Def|Gender=Fem|Number=Sing|PronType=Art"
ART_ELIDED = "Definite=Def|Number=Sing|PronType=Art"
ART_PL = "Definite=Def|Number=Plur|PronType=Art"
IND_M = "Definite=Ind|Gender=Masc|Number=Sing|PronType=Art"
IND_F = "Definite=Ind|Gender=Fem|Number=Sing|PronType=Art"
EST = "Mood=Ind|Number=Sing|Person=3|Tense=Pres|VerbForm=Fin"
SONT = "Mood=Ind|Number=Plur|Person=3|Tense=Pres|VerbForm=Fin"
FIN3 = "Mood=Ind|Number=Sing|Person=3|Tense=Pres|VerbForm=Fin"


def g(gender, number="Sing"):
    return f"Gender={gender}|Number={number}"


def pron_feats(gender):
    return f"Gender={gender}|Number=Sing|Person=3|PronType=Prs"


VOWELS = tuple("aeiouyhéèêàâîôû")

# (masc, fem) human nouns; lemma is the masculine form
FR_NOUNS = [("soldat", "soldate"), ("voisin", "voisine"), ("cousin", "cousine"),
            ("chanteur", "chanteuse"), ("boulanger", "boulangère"), ("danseur", "danseuse"),
            ("client", "cliente"), ("marchand", "marchande"), ("patron", "patronne"),
            ("serveur", "serveuse")]
FR_ADJS = [("content", "contente"), ("grand", "grande"), ("petit", "petite"),
           ("allemand", "allemande"), ("fatigué", "fatiguée"), ("heureux", "heureuse"),
           ("prêt", "prête"), ("français", "française"), ("fier", "fière"),
           ("malade", "malade")]
FR_OBJ = [("livre", "Masc", "un"), ("pomme", "Fem", "une"), ("gâteau", "Masc", "un"),
          ("lettre", "Fem", "une"), ("train", "Masc", "un"), ("voiture", "Fem", "une")]
FR_VERBS = [("mange", "manger"), ("lit", "lire"), ("attend", "attendre"),
            ("regarde", "regarder"), ("cherche", "chercher"), ("aime", "aimer")]
FR_PART = [("arrivé", "arrivée", "arriver"), ("parti", "partie", "partir"),
           ("tombé", "tombée", "tomber"), ("venu", "venue", "venir")]


def fr_def(gender, next_word, capital):
    if next_word.startswith(VOWELS):
        form, feats = "l'", ART_ELIDED
    else:
        form, feats = ("le", ART_M) if gender == "Masc" else ("la", ART_F)
    return (cap(form) if capital else form), feats


def treebank():
    out = []
    genders = ("Masc", "Fem")
    # copular adjective with an agreeing subject and attributive adjective
    for n, (noun, adj1, adj2) in enumerate(zip(FR_NOUNS, FR_ADJS, FR_ADJS[3:] + FR_ADJS[:3])):
        for gi, gen in enumerate(genders):
            nf = noun[gi]
            det, dfeats = fr_def(gen, nf, True)
            out.append([
                Tok(det, "le", "DET", 2, "det", dfeats, space=not det.endswith("'")),
                Tok(nf, noun[0], "NOUN", 6, "nsubj", g(gen)),
                Tok(adj1[gi], adj1[0], "ADJ", 2, "amod", g(gen)),
                Tok("est", "être", "AUX", 6, "cop", EST),
                Tok("très", "très", "ADV", 6, "advmod"),
                Tok(adj2[gi], adj2[0], "ADJ", 0, "root", g(gen), space=False),
                Tok(".", ".", "PUNCT", 6, "punct"),
            ])
    # finite verb with a subject and an object
    for (noun, verb), obj in zip(itertools.product(FR_NOUNS[:6], FR_VERBS[:2]),
                                 itertools.cycle(FR_OBJ)):
        for gi, gen in enumerate(genders):
            nf = noun[gi]
            det, dfeats = fr_def(gen, nf, True)
            oart = obj[2]
            out.append([
                Tok(det, "le", "DET", 2, "det", dfeats, space=not det.endswith("'")),
                Tok(nf, noun[0], "NOUN", 3, "nsubj", g(gen)),
                Tok(verb[0], verb[1], "VERB", 0, "root", FIN3),
                Tok(oart, "un", "DET", 5, "det", IND_M if obj[1] == "Masc" else IND_F),
                Tok(obj[0], obj[0], "NOUN", 3, "obj", g(obj[1]), space=False),
                Tok(".", ".", "PUNCT", 3, "punct"),
            ])
    # pronoun subject of a copular adjective
    for adj in FR_ADJS:
        for gi, gen in enumerate(genders):
            out.append([
                Tok("Il" if gen == "Masc" else "Elle", "il", "PRON", 3, "nsubj", pron_feats(gen)),
                Tok("est", "être", "AUX", 3, "cop", EST),
                Tok(adj[gi], adj[0], "ADJ", 0, "root", g(gen), space=False),
                Tok(".", ".", "PUNCT", 3, "punct"),
            ])
    # pronoun subject of a finite verb
    for verb, obj in zip(FR_VERBS, FR_OBJ):
        for gen in genders:
            det, dfeats = fr_def(obj[1], obj[0], False)
            out.append([
                Tok("Il" if gen == "Masc" else "Elle", "il", "PRON", 2, "nsubj", pron_feats(gen)),
                Tok(verb[0], verb[1], "VERB", 0, "root", FIN3),
                Tok(det, "le", "DET", 4, "det", dfeats),
                Tok(obj[0], obj[0], "NOUN", 2, "obj", g(obj[1]), space=False),
                Tok(".", ".", "PUNCT", 2, "punct"),
            ])
    # passé composé with être: the participle agrees
    for noun, part in zip(FR_NOUNS[4:], itertools.cycle(FR_PART)):
        for gi, gen in enumerate(genders):
            nf = noun[gi]
            det, dfeats = fr_def(gen, nf, True)
            out.append([
                Tok(det, "le", "DET", 2, "det", dfeats, space=not det.endswith("'")),
                Tok(nf, noun[0], "NOUN", 4, "nsubj", g(gen)),
                Tok("est", "être", "AUX", 4, "aux", EST),
                Tok(part[gi], part[2], "VERB", 0, "root",
                    g(gen) + "|Tense=Past|VerbForm=Part", space=False),
                Tok(".", ".", "PUNCT", 4, "punct"),
            ])
    # plurals
    for noun, adj in zip(FR_NOUNS[:4], FR_ADJS[:4]):
        for gi, gen in enumerate(genders):
            out.append([
                Tok("Les", "le", "DET", 2, "det", ART_PL),
                Tok(noun[gi] + "s", noun[0], "NOUN", 4, "nsubj", g(gen, "Plur")),
                Tok("sont", "être", "AUX", 4, "cop", SONT),
                Tok(adj[gi] + ("" if adj[gi].endswith(("s", "x")) else "s"), adj[0], "ADJ", 0,
                    "root", g(gen, "Plur"), space=False),
                Tok(".", ".", "PUNCT", 4, "punct"),
            ])
    text = "".join(block(s, [f"# sent_id = fr-tb-{i:03d}"]) for i, s in enumerate(out, 1))
    (OUT / "fr_treebank.conllu").write_text(text)


# ---------------------------------------------------------------- worked pairs

EN_DEF = "Definite=Def|PronType=Art"


def en_pron(form, gender, case="Nom"):
    return Tok(form, {"Masc": "he", "Fem": "she"}[gender], "PRON", 0, "_",
               f"Case={case}|Gender={gender}|Number=Sing|Person=3|PronType=Prs")


def worked_pairs():
    en, fr = [], []

    def add(cid, pronoun, prof, lemma, en_toks, fr_toks):
        comments = [f"# cfgen_id = {cid}", f"# cfgen_pronoun = {pronoun}",
                    f"# cfgen_profession = {prof}", f"# cfgen_lemma = {lemma}"]
        en.append(block(en_toks, comments))
        fr.append(block(fr_toks, [f"# cfgen_id = {cid}"]))

    add("soldat", 0, 3, "soldier", [
        Tok("The", "the", "DET", 3, "det", EN_DEF),
        Tok("German", "German", "ADJ", 3, "amod", "Degree=Pos"),
        Tok("soldier", "soldier", "NOUN", 6, "nsubj", "Number=Sing"),
        Tok("is", "be", "AUX", 6, "cop", "Mood=Ind|Number=Sing|Person=3|Tense=Pres|VerbForm=Fin"),
        Tok("very", "very", "ADV", 6, "advmod"),
        Tok("happy", "happy", "ADJ", 0, "root", "Degree=Pos", space=False),
        Tok(".", ".", "PUNCT", 6, "punct"),
    ], [
        Tok("Le", "le", "DET", 2, "det", ART_M),
        Tok("soldat", "soldat", "NOUN", 6, "nsubj", g("Masc")),
        Tok("allemand", "allemand", "ADJ", 2, "amod", g("Masc")),
        Tok("est", "être", "AUX", 6, "cop", EST),
        Tok("très", "très", "ADV", 6, "advmod"),
        Tok("content", "content", "ADJ", 0, "root", g("Masc"), space=False),
        Tok(".", ".", "PUNCT", 6, "punct"),
    ])

    he = en_pron("He", "Masc")
    he.head, he.deprel = 4, "nsubj"
    add("journaliste", 1, 8, "reporter", [
        he,
        Tok("did", "do", "AUX", 4, "aux", "Mood=Ind|Tense=Past|VerbForm=Fin", space=False),
        Tok("n't", "not", "PART", 4, "advmod"),
        Tok("wait", "wait", "VERB", 0, "root", "VerbForm=Inf"),
        Tok("around", "around", "ADV", 4, "advmod"),
        Tok("for", "for", "SCONJ", 10, "mark"),
        Tok("the", "the", "DET", 8, "det", EN_DEF),
        Tok("reporter", "reporter", "NOUN", 10, "nsubj", "Number=Sing"),
        Tok("to", "to", "PART", 10, "mark"),
        Tok("come", "come", "VERB", 4, "advcl", "VerbForm=Inf"),
        Tok("calling", "call", "VERB", 10, "xcomp", "VerbForm=Ger", space=False),
        Tok(".", ".", "PUNCT", 4, "punct"),
    ], [
        Tok("Il", "il", "PRON", 5, "nsubj", pron_feats("Masc")),
        Tok("n'", "ne", "ADV", 5, "advmod", "Polarity=Neg", space=False),
        Tok("a", "avoir", "AUX", 5, "aux", FIN3),
        Tok("pas", "pas", "ADV", 5, "advmod", "Polarity=Neg"),
        Tok("attendu", "attendre", "VERB", 0, "root", g("Masc") + "|Tense=Past|VerbForm=Part"),
        Tok("que", "que", "SCONJ", 10, "mark"),
        Tok("le", "le", "DET", 8, "det", ART_M),
        Tok("journaliste", "journaliste", "NOUN", 10, "nsubj", g("Masc")),
        Tok("l'", "le", "PRON", 10, "obj", "Number=Sing|Person=3|PronType=Prs", space=False),
        Tok("appelle", "appeler", "VERB", 5, "ccomp",
            "Mood=Sub|Number=Sing|Person=3|Tense=Pres|VerbForm=Fin", space=False),
        Tok(".", ".", "PUNCT", 5, "punct"),
    ])

    he2 = en_pron("he", "Masc")
    he2.head, he2.deprel = 11, "nsubj"
    add("client", 10, 3, "client", [
        Tok("If", "if", "SCONJ", 6, "mark"),
        Tok("the", "the", "DET", 3, "det", EN_DEF),
        Tok("client", "client", "NOUN", 6, "nsubj", "Number=Sing"),
        Tok("does", "do", "AUX", 6, "aux", "Mood=Ind|Number=Sing|Person=3|Tense=Pres|VerbForm=Fin"),
        Tok("not", "not", "PART", 6, "advmod"),
        Tok("like", "like", "VERB", 11, "advcl", "VerbForm=Inf"),
        Tok("the", "the", "DET", 8, "det", EN_DEF),
        Tok("photograph", "photograph", "NOUN", 6, "obj", "Number=Sing", space=False),
        Tok(",", ",", "PUNCT", 6, "punct"),
        he2,
        Tok("pays", "pay", "VERB", 0, "root", "Mood=Ind|Number=Sing|Person=3|Tense=Pres|VerbForm=Fin"),
        Tok("nothing", "nothing", "PRON", 11, "obj", "Number=Sing|PronType=Neg", space=False),
        Tok(".", ".", "PUNCT", 11, "punct"),
    ], [
        Tok("Si", "si", "SCONJ", 5, "mark"),
        Tok("le", "le", "DET", 3, "det", ART_M),
        Tok("client", "client", "NOUN", 5, "nsubj", g("Masc")),
        Tok("n'", "ne", "ADV", 5, "advmod", "Polarity=Neg", space=False),
        Tok("aime", "aimer", "VERB", 12, "advcl", FIN3),
        Tok("pas", "pas", "ADV", 5, "advmod", "Polarity=Neg"),
        Tok("la", "le", "DET", 8, "det", ART_F),
        Tok("photographie", "photographie", "NOUN", 5, "obj", g("Fem"), space=False),
        Tok(",", ",", "PUNCT", 5, "punct"),
        Tok("il", "il", "PRON", 12, "nsubj", pron_feats("Masc")),
        Tok("ne", "ne", "ADV", 12, "advmod", "Polarity=Neg"),
        Tok("paie", "payer", "VERB", 0, "root", FIN3),
        Tok("rien", "rien", "PRON", 12, "obj", "PronType=Neg", space=False),
        Tok(".", ".", "PUNCT", 12, "punct"),
    ])
    (OUT / "worked").mkdir(parents=True, exist_ok=True)
    (OUT / "worked" / "en.conllu").write_text("".join(en))
    (OUT / "worked" / "fr.conllu").write_text("".join(fr))


# ---------------------------------------------------------------- English helpers

EN_UPOS = {
    "the": "DET", "a": "DET", "an": "DET", "this": "DET",
    "he": "PRON", "she": "PRON", "him": "PRON", "his": "PRON", "her": "PRON", "it": "PRON",
    "they": "PRON", "nothing": "PRON",
    "is": "AUX", "was": "AUX", "were": "AUX", "would": "AUX", "had": "AUX", "did": "AUX",
    "and": "CCONJ", "because": "SCONJ", "that": "SCONJ", "if": "SCONJ",
    "at": "ADP", "to": "ADP", "of": "ADP", "with": "ADP", "about": "ADP", "for": "ADP",
    "before": "ADP", "after": "ADP", "in": "ADP", "on": "ADP",
    "very": "ADV", "slowly": "ADV", "early": "ADV", "late": "ADV", "yesterday": "ADV",
    "home": "ADV", "least": "ADV", "more": "ADV", "again": "ADV",
    "tired": "ADJ", "long": "ADJ", "difficult": "ADJ", "old": "ADJ", "red": "ADJ",
    "wonderful": "ADJ", "proud": "ADJ", "happy": "ADJ", "unpaid": "ADJ", "three": "NUM",
}
EN_VERBS = {"finished", "said", "told", "left", "cooked", "opened", "met", "lost", "hurt",
            "flew", "shouted", "smiled", "called", "saw", "stopped", "thanked", "sold", "rest",
            "finish", "praised", "won", "helped", "painted", "ran", "waited", "fixed"}
EN_PROPN = {"John", "Paris", "London", "Mary"}
PROFESSIONS = {"logistician", "nurse", "baker", "teacher", "engineer", "doctor", "waiter",
               "lawyer", "chef", "singer", "dancer", "writer", "actor", "driver", "soldier",
               "reporter", "client", "hairdresser", "farmer", "developer", "manager",
               "secretary", "cook", "accountant", "receptionist", "journalist"}


def en_tokens(sentence, overrides=None):
    """Flat annotation: every token attaches to the first verb."""
    overrides = overrides or {}
    raw_words = sentence.split(" ")
    toks = []
    for w in raw_words:
        trail = ""
        while w and w[-1] in ".,!?":
            trail = w[-1] + trail
            w = w[:-1]
        toks.append([w, True])
        for p in trail:
            toks[-1][1] = False
            toks.append([p, True])
    toks[-1][1] = True
    out = []
    for i, (form, space) in enumerate(toks):
        low = form.lower()
        feats = "_"
        lemma = low
        if i in overrides:
            upos, feats, lemma = overrides[i]
        elif form in ".,!?":
            upos = "PUNCT"
        elif form in EN_PROPN:
            upos, lemma = "PROPN", form
            feats = "Number=Sing"
        elif low in PROFESSIONS:
            upos, feats = "NOUN", "Number=Sing"
        elif low.endswith("s") and low[:-1] in PROFESSIONS:
            upos, feats, lemma = "NOUN", "Number=Plur", low[:-1]
        elif low in EN_VERBS:
            upos = "VERB"
        elif low in EN_UPOS:
            upos = EN_UPOS[low]
        else:
            upos = "NOUN"
        if low in ("he", "she"):
            feats = f"Case=Nom|Gender={'Masc' if low == 'he' else 'Fem'}|Number=Sing|Person=3|PronType=Prs"
            lemma = low
        elif low == "him":
            feats, lemma = "Case=Acc|Gender=Masc|Number=Sing|Person=3|PronType=Prs", "he"
        elif low == "his":
            feats, lemma = "Gender=Masc|Number=Sing|Person=3|Poss=Yes|PronType=Prs", "he"
        elif low == "her" and i not in overrides:
            feats, lemma = "Case=Acc|Gender=Fem|Number=Sing|Person=3|PronType=Prs", "she"
        out.append(Tok(form, lemma, upos, 0, "_", feats, space))
    root = next((i for i, t in enumerate(out) if t.upos == "VERB"), 0)
    for i, t in enumerate(out):
        if i == root:
            t.head, t.deprel = 0, "root"
        else:
            t.head = root + 1
            t.deprel = {"DET": "det", "PUNCT": "punct", "ADP": "case", "AUX": "aux",
                        "PRON": "obj", "ADV": "advmod", "ADJ": "amod", "SCONJ": "mark",
                        "CCONJ": "cc", "PROPN": "obl", "NUM": "nummod"}.get(t.upos, "obj")
    return out


POSS_HER = ("PRON", "Gender=Fem|Number=Sing|Person=3|Poss=Yes|PronType=Prs", "she")


def fr_flat(sentence):
    words = sentence.split(" ")
    toks = []
    for w in words:
        trail = ""
        while w and w[-1] in ".,!?":
            trail = w[-1] + trail
            w = w[:-1]
        if "'" in w[:-1]:
            head, rest = w.split("'", 1)
            toks.append([head + "'", False])
            w = rest
        toks.append([w, True])
        for p in trail:
            toks[-1][1] = False
            toks.append([p, True])
    toks[-1][1] = True
    out = []
    for i, (form, space) in enumerate(toks):
        upos = "PUNCT" if form in ".,!?" else ("VERB" if i == 2 else "NOUN")
        out.append(Tok(form, form.lower(), upos, 0 if i == 2 else 3,
                       "root" if i == 2 else ("punct" if upos == "PUNCT" else "dep"), "_", space))
    if len(out) < 3:
        out[0].head, out[0].deprel = 0, "root"
        for t in out[1:]:
            t.head = 1
    return out


# ---------------------------------------------------------------- filter fixture

def long_sentence(prefix, n):
    words = prefix.split(" ")
    filler = "and then the dog ran".split(" ")
    k = 0
    while len(words) < n - 1:
        words.append(filler[k % len(filler)])
        k += 1
    words.append("home.")
    return " ".join(words)


def filter_fixture():
    long101 = long_sentence("The driver said that he saw", 101)
    long120 = long_sentence("The weather was calm", 120)
    fr101 = long_sentence("Le conducteur a dit qu'il a vu", 101).replace(
        "and then the dog ran", "et puis le chien courait").replace("home.", "loin.")
    fr101 = " ".join(fr101.split(" ")[:101])
    fr120 = " ".join(long_sentence("Le temps était calme", 120).replace(
        "and", "et").replace("then", "puis").replace("the", "le").replace(
        "dog", "chien").replace("ran", "courait").split(" ")[:120])
    rows = [
        # english, french, gendered reasons, neutral reasons, en overrides
        ("The logistician finished his work.", "Le logisticien a terminé son travail.", "", "", {}),
        ("The nurse said that she was tired.", "L'infirmière a dit qu'elle était fatiguée.", "", "", {}),
        ("The baker sold his bread early.", "Le boulanger a vendu son pain tôt.", "", "", {}),
        ("The teacher shouted at her.", "L'enseignant a crié contre elle.", "", "", {}),
        ("The engineer said that he would finish the long and difficult report about the old "
         "bridge before the end of the week.",
         "L'ingénieur a dit qu'il terminerait le long et difficile rapport sur le vieux pont "
         "avant la fin de la semaine.", "Length", "", {}),
        ("The doctor told the patient that she had to rest at home for at least three more "
         "weeks after the operation.",
         "La docteure a dit au patient qu'il devait se reposer chez lui pendant au moins trois "
         "semaines après l'opération.", "Length", "", {}),
        ("The waiter smiled at her.",
         "Le serveur lui a souri très chaleureusement pendant toute la longue soirée passée au "
         "restaurant du coin.", "LengthRatio", "LengthRatio", {}),
        ("He called the lawyer yesterday about the contract and the unpaid invoices again.",
         "Il a appelé.", "LengthRatio", "LengthRatio", {}),
        ("He told her the engineer left.", "Il lui a dit que l'ingénieur était parti.",
         "Animacy", "", {}),
        ("The chef cooked a wonderful meal.", "Le chef a cuisiné un merveilleux repas.",
         "Animacy", "", {}),
        ("She opened the window slowly.", "Elle a ouvert la fenêtre lentement.", "Animacy", "", {}),
        ("The nurses said that she was late.", "Les infirmières ont dit qu'elle était en retard.",
         "Animacy", "", {}),
        ("The actor union praised his speech.", "Le syndicat des acteurs a salué son discours.",
         "Animacy", "", {1: ("ADJ", "_", "actor")}),
        ("the singer lost her voice.", "La chanteuse a perdu sa voix.", "Wellformedness",
         "Wellformedness", {3: POSS_HER}),
        ("The dancer hurt his knee", "Le danseur s'est blessé au genou", "Wellformedness",
         "Wellformedness", {}),
        ("The nurse met John because he was late.",
         "L'infirmière a rencontré John parce qu'il était en retard.", "ProperNoun", "", {}),
        ("The lawyer flew to Paris with her files.", "L'avocate a pris l'avion pour Paris avec "
         "ses dossiers.", "ProperNoun", "", {6: POSS_HER}),
        ("the writer finished his novel in London", "l'écrivain a fini son roman à Londres",
         "Wellformedness,ProperNoun", "Wellformedness", {}),
        (long101, fr101, "Length", "Length", {}),
        (long120, fr120, "Length,Animacy", "Length", {}),
    ]
    en, fr, labels = [], [], ["id\tgendered\tneutral"]
    for i, (e, f, gr, nr, ov) in enumerate(rows, 1):
        en.append(block(en_tokens(e, ov), [f"# cfgen_id = f{i:02d}"]))
        fr.append(block(fr_flat(f), [f"# cfgen_id = f{i:02d}"]))
        labels.append(f"f{i:02d}\t{gr or 'accept'}\t{nr or 'accept'}")
    d = OUT / "filter"
    d.mkdir(parents=True, exist_ok=True)
    (d / "en.conllu").write_text("".join(en))
    (d / "fr.conllu").write_text("".join(fr))
    (d / "expected.tsv").write_text("\n".join(labels) + "\n")


# ---------------------------------------------------------------- pipeline corpus

CORPUS_PROFS = [
    # en lemma, fr masc, fr fem
    ("soldier", "soldat", "soldate"), ("lawyer", "avocat", "avocate"),
    ("baker", "boulanger", "boulangère"), ("singer", "chanteur", "chanteuse"),
    ("nurse", "infirmier", "infirmière"), ("teacher", "enseignant", "enseignante"),
    ("writer", "écrivain", "écrivaine"), ("dancer", "danseur", "danseuse"),
    ("developer", "développeur", "développeuse"), ("driver", "conducteur", "conductrice"),
    ("hairdresser", "coiffeur", "coiffeuse"), ("waiter", "serveur", "serveuse"),
    ("journalist", "journaliste", "journaliste"), ("client", "client", "cliente"),
]


def en_template(kind, prof, gender, obj="work"):
    masc = gender == "Masc"
    if kind == "finished":
        s = f"The {prof} finished {'his' if masc else 'her'} {obj}."
        toks = en_tokens(s, {} if masc else {3: POSS_HER})
        heads = [2, 3, 0, 5, 3, 3]
        rels = ["det", "nsubj", "root", "nmod:poss", "obj", "punct"]
    elif kind == "said":
        s = f"The {prof} said that {'he' if masc else 'she'} was tired."
        toks = en_tokens(s)
        heads = [2, 3, 0, 7, 7, 7, 3, 3]
        rels = ["det", "nsubj", "root", "mark", "nsubj", "cop", "ccomp", "punct"]
        toks[6].upos = "ADJ"
    else:  # proud
        s = f"The {prof} is proud of {'his' if masc else 'her'} children."
        toks = en_tokens(s, {} if masc else {5: POSS_HER})
        heads = [2, 4, 4, 0, 7, 7, 4, 4]
        rels = ["det", "nsubj", "cop", "root", "case", "nmod:poss", "obl", "punct"]
        toks[6].feats = "Number=Plur"
        toks[6].lemma = "child"
    for t, h, r in zip(toks, heads, rels):
        t.head, t.deprel = h, r
    if toks[0].lemma == "the":
        toks[0].feats = EN_DEF
    return toks


FR_OBJECTS = {"work": ("travail", "Masc"), "bread": ("pain", "Masc"), "cake": ("gâteau", "Masc"),
              "book": ("livre", "Masc"), "letter": ("courrier", "Masc"),
              "project": ("projet", "Masc"), "meal": ("repas", "Masc"),
              "report": ("rapport", "Masc"), "order": ("travail", "Masc"),
              "shift": ("service", "Masc"), "garden": ("jardin", "Masc"),
              "speech": ("discours", "Masc")}


def fr_template(kind, masc_form, fem_form, gender, obj="work"):
    nf = masc_form if gender == "Masc" else fem_form
    det, dfeats = fr_def(gender, nf, True)
    detsp = not det.endswith("'")
    if kind == "finished":
        o, og = FR_OBJECTS[obj]
        return [
            Tok(det, "le", "DET", 2, "det", dfeats, space=detsp),
            Tok(nf, masc_form, "NOUN", 3, "nsubj", g(gender)),
            Tok("termine", "terminer", "VERB", 0, "root", FIN3),
            Tok("son", "son", "DET", 5, "det", g(og) + "|Poss=Yes|PronType=Prs"),
            Tok(o, o, "NOUN", 3, "obj", g(og), space=False),
            Tok(".", ".", "PUNCT", 3, "punct"),
        ]
    if kind == "said":
        pron = "il" if gender == "Masc" else "elle"
        adj = "fatigué" if gender == "Masc" else "fatiguée"
        return [
            Tok(det, "le", "DET", 2, "det", dfeats, space=detsp),
            Tok(nf, masc_form, "NOUN", 3, "nsubj", g(gender)),
            Tok("dit", "dire", "VERB", 0, "root", FIN3),
            Tok("qu'", "que", "SCONJ", 7, "mark", space=False),
            Tok(pron, "il", "PRON", 7, "nsubj", pron_feats(gender)),
            Tok("est", "être", "AUX", 7, "cop", EST),
            Tok(adj, "fatigué", "ADJ", 3, "ccomp", g(gender), space=False),
            Tok(".", ".", "PUNCT", 3, "punct"),
        ]
    adj = "fier" if gender == "Masc" else "fière"
    return [
        Tok(det, "le", "DET", 2, "det", dfeats, space=detsp),
        Tok(nf, masc_form, "NOUN", 4, "nsubj", g(gender)),
        Tok("est", "être", "AUX", 4, "cop", EST),
        Tok(adj, "fier", "ADJ", 0, "root", g(gender)),
        Tok("de", "de", "ADP", 7, "case"),
        Tok("ses", "son", "DET", 7, "det", "Number=Plur|Poss=Yes|PronType=Prs"),
        Tok("enfants", "enfant", "NOUN", 4, "obl", g("Masc", "Plur"), space=False),
        Tok(".", ".", "PUNCT", 4, "punct"),
    ]


def pipeline_corpus():
    en, fr = [], []
    n = 0

    def add(en_toks, fr_toks, ranges=()):
        nonlocal n
        n += 1
        en.append(block(en_toks, [f"# cfgen_id = c{n:03d}"]))
        fr.append(block(fr_toks, [f"# cfgen_id = c{n:03d}"], ranges))

    for pi, (lemma, m, f) in enumerate(CORPUS_PROFS):
        for ki, kind in enumerate(("finished", "said", "proud")):
            gender = ("Masc", "Fem")[(pi + ki) % 2]
            add(en_template(kind, lemma, gender), fr_template(kind, m, f, gender))
    # more bakers than the per-profession cap
    for i, obj in enumerate(["bread", "cake", "book", "letter", "project", "meal", "report",
                             "order", "shift", "garden", "speech"]):
        gender = ("Masc", "Fem")[i % 2]
        add(en_template("finished", "baker", gender, obj),
            fr_template("finished", "boulanger", "boulangère", gender, obj))
    # a fused preposition + article kept as a multiword token
    toks = [
        Tok("Le", "le", "DET", 2, "det", ART_M),
        Tok("serveur", "serveur", "NOUN", 3, "nsubj", g("Masc")),
        Tok("parle", "parler", "VERB", 0, "root", FIN3),
        Tok("de", "de", "ADP", 6, "case"),
        Tok("le", "le", "DET", 6, "det", ART_M),
        Tok("gâteau", "gâteau", "NOUN", 3, "obl", g("Masc")),
        Tok("à", "à", "ADP", 8, "case"),
        Tok("sa", "son", "DET", 9, "det", g("Fem") + "|Poss=Yes|PronType=Prs"),
        Tok("fille", "fille", "NOUN", 3, "obl", g("Fem"), space=False),
        Tok(".", ".", "PUNCT", 3, "punct"),
    ]
    en_toks = en_tokens("The waiter talks about the cake to his daughter.")
    add(en_toks, toks, ranges=[(4, 5, "du", True)])
    # rejected by the filters
    add(en_tokens("The nurse met John because he was late."),
        fr_flat("L'infirmière a rencontré John parce qu'il était en retard."))
    add(en_tokens("He told her the engineer left."),
        fr_flat("Il lui a dit que l'ingénieur était parti."))
    add(en_tokens("the singer lost her voice.", {3: POSS_HER}),
        fr_flat("La chanteuse a perdu sa voix."))
    d = OUT / "corpus"
    d.mkdir(parents=True, exist_ok=True)
    (d / "en.conllu").write_text("".join(en))
    (d / "fr.conllu").write_text("".join(fr))

    # neutral corpus for the random sample
    subjects = [("The dog", "Le chien"), ("The city", "La ville"), ("The train", "Le train"),
                ("The river", "La rivière"), ("The old house", "La vieille maison"),
                ("The garden", "Le jardin")]
    preds = [("is quiet today.", "est calme aujourd'hui."),
             ("looks beautiful in spring.", "est belle au printemps."),
             ("was built long ago.", "a été construit il y a longtemps."),
             ("needs some repairs.", "a besoin de réparations."),
             ("is far from here.", "est loin d'ici.")]
    lines = []
    for (se, sf), (pe, pf) in itertools.product(subjects, preds):
        lines.append(f"{se} {pe}\t{sf} {pf}")
    lines.insert(7, "this line has no capital letter\tcette ligne n'a pas de majuscule")
    lines.insert(15, "Yes.\tOui, bien sûr, nous le ferons avec grand plaisir demain matin.")
    (d / "neutral.tsv").write_text("\n".join(lines) + "\n")

    hand = []
    for lemma, m, f in CORPUS_PROFS[:6]:
        for gender in ("Masc", "Fem"):
            pron = "his" if gender == "Masc" else "her"
            nf = m if gender == "Masc" else f
            det, _ = fr_def(gender, nf, True)
            sep = "" if det.endswith("'") else " "
            hand.append(f"The {lemma} finished {pron} work.\t{det}{sep}{nf} a fini son travail.")
    (d / "handcrafted.fr.tsv").write_text("\n".join(hand) + "\n")


# ---------------------------------------------------------------- her disambiguation

HER_CASES = [
    # sentence, index of her (0-based token), possessive?, expected swap
    ("The teacher shouted at her.", 4, False, "The teacher shouted at him."),
    ("Her book fell.", 0, True, "His book fell."),
    ("The nurse helped her.", 3, False, "The nurse helped him."),
    ("The chef painted her kitchen.", 3, True, "The chef painted his kitchen."),
    ("They thanked her again.", 2, False, "They thanked him again."),
    ("Her car stopped.", 0, True, "His car stopped."),
    ("The driver saw her.", 3, False, "The driver saw him."),
    ("The baker sold her bread.", 3, True, "The baker sold his bread."),
    ("The doctor called her.", 3, False, "The doctor called him."),
    ("The lawyer fixed her contract.", 3, True, "The lawyer fixed his contract."),
    ("The writer met her.", 3, False, "The writer met him."),
    ("The singer lost her voice.", 3, True, "The singer lost his voice."),
    ("The dancer waited for her.", 4, False, "The dancer waited for him."),
    ("The farmer sold her cows.", 3, True, "The farmer sold his cows."),
    ("The waiter smiled at her.", 4, False, "The waiter smiled at him."),
    ("Her garden is very old.", 0, True, "His garden is very old."),
    ("The manager told her.", 3, False, "The manager told him."),
    ("The nurse finished her shift.", 3, True, "The nurse finished his shift."),
    ("The actor praised her.", 3, False, "The actor praised him."),
    ("The teacher opened her door.", 3, True, "The teacher opened his door."),
    ("The engineer helped her again.", 3, False, "The engineer helped him again."),
    ("The cook hurt her hand.", 3, True, "The cook hurt his hand."),
    ("The reporter saw her yesterday.", 3, False, "The reporter saw him yesterday."),
    ("The secretary lost her keys.", 3, True, "The secretary lost his keys."),
    ("The client thanked her.", 3, False, "The client thanked him."),
    ("The developer fixed her laptop.", 3, True, "The developer fixed his laptop."),
    ("The soldier called her home.", 3, False, "The soldier called him home."),
    ("Her report was long.", 0, True, "His report was long."),
    ("The accountant met her early.", 3, False, "The accountant met him early."),
    ("The hairdresser cut her hair.", 3, True, "The hairdresser cut his hair."),
]


def her_fixture():
    blocks, expected = [], ["id\tindex\texpected"]
    for i, (s, idx, poss, want) in enumerate(HER_CASES, 1):
        ov = {idx: POSS_HER} if poss else {}
        toks = en_tokens(s, ov)
        if poss:
            toks[idx].deprel = "nmod:poss"
        blocks.append(block(toks, [f"# cfgen_id = h{i:02d}"]))
        expected.append(f"h{i:02d}\t{idx + 1}\t{want}")
    (OUT / "her").mkdir(parents=True, exist_ok=True)
    (OUT / "her" / "en.conllu").write_text("".join(blocks))
    (OUT / "her" / "expected.tsv").write_text("\n".join(expected) + "\n")


if __name__ == "__main__":
    OUT.mkdir(parents=True, exist_ok=True)
    treebank()
    worked_pairs()
    filter_fixture()
    pipeline_corpus()
    her_fixture()
