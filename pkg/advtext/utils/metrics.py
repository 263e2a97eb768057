import math
import re
from collections import Counter
from typing import List, Sequence, Tuple

from Levenshtein import distance as levdistance

from advtext.models.attacked_text import WORD_PATTERN

BLEU_ORDER = 4
CHRF_ORDER = 6
CHRF_BETA = 2


def levenshtein(a: str, b: str) -> int:
    """Character-level edit distance (unit insert/delete/substitute costs)."""
    return levdistance(a, b)


def bleu_tokens(text: str) -> List[str]:
    return [w.lower() for w in WORD_PATTERN.findall(text)]


def extract_ngrams(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))


def sentence_bleu(hypothesis: str, reference: str, order: int = BLEU_ORDER) -> float:
    """Sentence BLEU with uniform weights and add-one smoothing of empty orders.

    No unigram match scores 0; an order with matches `m` of `t`
    hypothesis n-grams contributes m/t, or 1/(t+1) when m is 0.
    """
    hyp, ref = bleu_tokens(hypothesis), bleu_tokens(reference)
    if not hyp and not ref:
        return 1.0
    if not hyp or not ref:
        return 0.0
    log_precision = 0.0
    for n in range(1, order + 1):
        hyp_ngrams = extract_ngrams(hyp, n)
        matches = sum((hyp_ngrams & extract_ngrams(ref, n)).values())
        total = max(len(hyp) - n + 1, 0)
        if matches == 0:
            if n == 1:
                return 0.0
            log_precision += math.log(1.0 / (total + 1))
        else:
            log_precision += math.log(matches / total)
    brevity = 1.0 if len(hyp) > len(ref) else math.exp(1.0 - len(ref) / len(hyp))
    return brevity * math.exp(log_precision / order)


def delete_whitespace(text: str) -> str:
    return re.sub(r"\s+", "", text).strip()


def extract_char_ngrams(s: str, n: int) -> Counter:
    return Counter([s[i:i + n] for i in range(len(s) - n + 1)])


def _avg_precision_and_recall(hypothesis: str, reference: str, order: int) -> Tuple[float, float]:
    avg_precision = 0.0
    avg_recall = 0.0
    effective_order = 0
    for n in range(1, order + 1):
        hyp_ngrams = extract_char_ngrams(hypothesis, n)
        ref_ngrams = extract_char_ngrams(reference, n)
        hyp_total, ref_total = sum(hyp_ngrams.values()), sum(ref_ngrams.values())
        if hyp_total > 0 and ref_total > 0:
            common = sum((hyp_ngrams & ref_ngrams).values())
            avg_precision += common / hyp_total
            avg_recall += common / ref_total
            effective_order += 1
    if effective_order == 0:
        return 0.0, 0.0
    return avg_precision / effective_order, avg_recall / effective_order


def sentence_chrf(hypothesis: str, reference: str, order: int = CHRF_ORDER, beta: float = CHRF_BETA) -> float:
    hypothesis, reference = delete_whitespace(hypothesis), delete_whitespace(reference)
    if hypothesis == reference:
        return 1.0
    precision, recall = _avg_precision_and_recall(hypothesis, reference, order)
    if precision + recall == 0:
        return 0.0
    beta_square = beta ** 2
    return (1 + beta_square) * precision * recall / (beta_square * precision + recall)
