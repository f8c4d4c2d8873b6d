"""Independent brute-force oracles used to derive expected test values.

None of these call the library's enumeration, case analysis or reduction
paths: paths come from raw arrow words, admissibility is restated inline,
and products are computed by exhaustive local rewriting of generator words.
"""
from __future__ import annotations

import itertools
from fractions import Fraction


def word_paths(quiver, length):
    """All composable arrow words of the given length, as tuples
    (first-traversed first). Pure itertools, no library enumeration."""
    if length == 0:
        return [()]
    words = []
    for combo in itertools.product(sorted(quiver.arrows), repeat=length):
        ok = all(quiver.arrows[combo[i]].target == quiver.arrows[combo[i + 1]].source
                 for i in range(length - 1))
        if ok:
            words.append(combo)
    return words


def admissible_oracle(quiver, p_word, p_base, q_word, q_base):
    """Definition restated from scratch on raw words; bases matter only for
    trivial words."""
    p_target = quiver.arrows[p_word[-1]].target if p_word else p_base
    q_target = quiver.arrows[q_word[-1]].target if q_word else q_base
    if p_target != q_target:
        return False
    if not p_word or not q_word:
        return True
    a, b = p_word[-1], q_word[-1]
    if a != b:
        return True
    return quiver.special[quiver.arrows[a].source] != a


# -- word rewriting ----------------------------------------------------------
# tokens: ("v", vertex), ("a", arrow), ("g", arrow)

def _ends(quiver, tok):
    kind, label = tok
    if kind == "v":
        return label, label
    arr = quiver.arrows[label]
    if kind == "a":
        return arr.source, arr.target
    return arr.target, arr.source          # ghost reverses the arrow


def _rewrite_once(quiver, word):
    """First applicable local rewrite; None when the word is normal.
    Returns a list of (word, coeff) replacements."""
    for i in range(len(word) - 1):
        left, right = word[i], word[i + 1]
        ls, _lt = _ends(quiver, left)
        _rs, rt = _ends(quiver, right)
        if ls != rt:
            return []
        if left[0] == "v":
            return [(word[:i] + word[i + 1:], 1)]
        if right[0] == "v":
            return [(word[:i + 1] + word[i + 2:], 1)]
        if left[0] == "a" and right[0] == "g":
            if left[1] == right[1]:
                tgt = quiver.arrows[left[1]].target
                return [(word[:i] + (("v", tgt),) + word[i + 2:], 1)]
            return []
        if left[0] == "g" and right[0] == "a" and left[1] == right[1]:
            a = left[1]
            src = quiver.arrows[a].source
            if quiver.special[src] == a:
                out = [(word[:i] + (("v", src),) + word[i + 2:], 1)]
                for b in sorted(quiver.arrows):
                    if b != a and quiver.arrows[b].source == src:
                        out.append((word[:i] + (("g", b), ("a", b)) + word[i + 2:], -1))
                return out
    return None


def reduce_word(quiver, word, coeff=1):
    """Exhaustively rewrite a generator word into normal-form words."""
    result = {}
    stack = [(tuple(word), coeff)]
    while stack:
        w, c = stack.pop()
        step = _rewrite_once(quiver, w)
        if step is None:
            result[w] = result.get(w, 0) + c
            if not result[w]:
                del result[w]
        else:
            for w2, c2 in step:
                stack.append((w2, c * c2))
    return result


def oracle_mul(quiver, x, y):
    """Multiply two word combinations {word: coeff}."""
    out = {}
    for w1, c1 in x.items():
        for w2, c2 in y.items():
            for w, c in reduce_word(quiver, w1 + w2, c1 * c2).items():
                out[w] = out.get(w, 0) + c
                if not out[w]:
                    del out[w]
    return out


def word_of_pair(pair):
    """The generator word of a basis monomial: ghosts of p's arrows in
    storage order, then q's arrows in reverse storage order."""
    tokens = tuple(("g", a) for a in pair.p.arrows)
    tokens += tuple(("a", a) for a in reversed(pair.q.arrows))
    if not tokens:
        tokens = (("v", pair.q.source),)
    return tokens


def element_to_words(el):
    out = {}
    for pair, c in el.items():
        w = word_of_pair(pair)
        out[w] = out.get(w, 0) + c
        if not out[w]:
            del out[w]
    return out


def normal_words_equal(quiver, el, words):
    """Compare a library element against an oracle word combination after
    reducing both sides to normal words."""
    lhs = {}
    for w, c in element_to_words(el).items():
        for w2, c2 in reduce_word(quiver, w, c).items():
            lhs[w2] = lhs.get(w2, 0) + c2
            if not lhs[w2]:
                del lhs[w2]
    rhs = {}
    for w, c in words.items():
        for w2, c2 in reduce_word(quiver, w, c).items():
            rhs[w2] = rhs.get(w2, 0) + c2
            if not rhs[w2]:
                del rhs[w2]
    return {k: Fraction(v) for k, v in lhs.items()} == {k: Fraction(v) for k, v in rhs.items()}
