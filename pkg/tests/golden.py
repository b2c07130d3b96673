"""Classical low-order values used as exact fixtures across the suite."""

from zassenhaus import CommutatorSeries, Word
from zassenhaus.rationals import Q
from zassenhaus.words import word_series

C2 = word_series({"ba": "1/2", "ab": "-1/2"})

C3 = word_series(
    {
        "bab": "2/3",
        "aba": "-1/3",
        "abb": "-1/3",
        "bba": "-1/3",
        "baa": "1/6",
        "aab": "1/6",
    }
)

C4 = word_series(
    {
        "aaab": "-1/24",
        "aaba": "1/8",
        "aabb": "1/8",
        "abaa": "-1/8",
        "abab": "-1/4",
        "abbb": "-1/8",
        "baaa": "1/24",
        "baba": "1/4",
        "babb": "3/8",
        "bbaa": "-1/8",
        "bbab": "-3/8",
        "bbba": "1/8",
    }
)

# log(e^x e^y) degree terms, with x as the first letter and y the second.
Z2 = word_series({"ab": "1/2", "ba": "-1/2"})
Z3 = word_series(
    {
        "aab": "1/12",
        "aba": "-1/6",
        "abb": "1/12",
        "baa": "1/12",
        "bab": "-1/6",
        "bba": "1/12",
    }
)


def _cs(pairs):
    return CommutatorSeries((Q(c), Word.from_string(w)) for c, w in pairs)


BA_FORM_C4 = _cs([("1/24", "baaa"), ("1/8", "baba"), ("1/8", "babb")])
AB_FORM_C4 = _cs([("-1/24", "abaa"), ("-1/8", "abab"), ("-1/8", "abbb")])

BA_FORM_C2 = _cs([("1/2", "ba")])
AB_FORM_C2 = _cs([("-1/2", "ab")])

BA_FORM_C3 = _cs([("1/6", "baa"), ("1/3", "bab")])
AB_FORM_C3 = _cs([("-1/6", "aba"), ("-1/3", "abb")])
