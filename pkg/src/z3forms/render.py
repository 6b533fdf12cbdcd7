"""Canonical text rendering for every algebra in the package.

One value, one string: terms are emitted in a fixed sort order with a
uniform scalar-prefix convention, so equal objects always print
identically.  The output is valid input for the expression parser:

* scalar prefixes: ``j^2 * dx[1] dx[2] dx[3]``, ``-2/3 * f g``,
  ``(1 - j) * th[2]``;
* jets with derivative indices are parenthesized to delimit the index
  list: ``(f_,1,2) dx[1]``; underived symbols print bare: ``x[2] dx[1]``;
* juxtaposition denotes multiplication throughout.
"""

from __future__ import annotations

from .scalar import ONE, Scalar


def _scalar_prefix(s: Scalar) -> str:
    """Multiplicative prefix for a term's scalar coefficient."""
    if s == ONE:
        return ""
    if s == -ONE:
        return "-"
    text = str(s)
    if " " in text:
        text = f"({text})"
    return f"{text} * "


def _join_terms(parts: list[str]) -> str:
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        if p.startswith("-"):
            out += " - " + p[1:]
        else:
            out += " + " + p
    return out


def _jet_text(sym) -> str:
    text = str(sym)
    return f"({text})" if sym.derivs else text


# -- coefficient expressions ---------------------------------------------------


def _coeff_word_key(word) -> tuple:
    return (len(word), tuple(sym.sort_key() for sym in word))


def render_coeff(expr) -> str:
    parts = []
    for word in sorted(expr.terms, key=_coeff_word_key):
        coeff = expr.terms[word]
        body = " ".join(_jet_text(sym) for sym in word)
        if not body:
            parts.append(str(coeff))
        else:
            parts.append(_scalar_prefix(coeff) + body)
    return _join_terms(parts)


# -- differential forms ---------------------------------------------------------


def _form_letter_text(letter) -> str:
    kind, payload = letter
    if kind == "c":
        return _jet_text(payload)
    return f"{kind}[{payload}]"


def _form_word_key(word) -> tuple:
    degree = sum(1 if l[0] == "dx" else 2 for l in word if l[0] != "c")
    return (degree, len(word), tuple(repr(l) for l in word))


def render_form(form) -> str:
    parts = []
    for word in sorted(form.terms, key=_form_word_key):
        coeff = form.terms[word]
        body = " ".join(_form_letter_text(l) for l in word)
        if not body:
            parts.append(str(coeff))
        else:
            parts.append(_scalar_prefix(coeff) + body)
    return _join_terms(parts)


def render_conj_form(cf) -> str:
    """Conjugate-side values print as the delta-image of their preimage.

    ``delta(conjugate_back(cf))`` reproduces ``cf`` exactly, so this text
    round-trips through the expression language by construction.
    """
    if cf.is_zero():
        return "0"
    return f"delta({render_form(cf.conjugate_back())})"


# -- Grassmann elements -----------------------------------------------------------


def render_grass(elem) -> str:
    parts = []
    for word in sorted(elem.terms, key=lambda w: (len(w), w)):
        coeff = elem.terms[word]
        body = " ".join(f"{kind}[{idx}]" for kind, idx in word)
        if not body:
            parts.append(str(coeff))
        else:
            parts.append(_scalar_prefix(coeff) + body)
    return _join_terms(parts)


# -- graded matrices ----------------------------------------------------------------


def render_matrix(mat) -> str:
    rows = [", ".join(str(entry) for entry in row) for row in mat.rows]
    return "mat[" + "; ".join(rows) + "]"
