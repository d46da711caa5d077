"""Deterministic random elements of bounded weighted degree."""
import random

from qhopf import scalars
from qhopf.freealg import NcPoly


def random_word(rng, alphabet, max_degree):
    word = []
    total = 0
    target = rng.randint(0, max_degree)
    letters = range(len(alphabet.letters))
    while True:
        fits = [i for i in letters if total + alphabet.degrees[i] <= target]
        if not fits:
            return tuple(word)
        i = rng.choice(fits)
        word.append(i)
        total += alphabet.degrees[i]
        if rng.random() < 0.15:
            return tuple(word)


def random_coefficient(rng, alphabet):
    pool = [1, -1, 2, scalars.eta(), 3 * scalars.eta() - 1]
    if not alphabet.classical:
        pool += [scalars.q(), scalars.q_power(-2), scalars.q_bracket(2)]
    return scalars.Scalar.coerce(rng.choice(pool))


def random_element(rng, alphabet, max_degree=6, terms=3):
    out = NcPoly.zero(alphabet)
    low = 0 if alphabet.classical else -1
    for _ in range(rng.randint(1, terms)):
        cartan = tuple(rng.randint(low, 1) for _ in range(alphabet.nc))
        tail = random_word(rng, alphabet, max_degree)
        out = out + NcPoly.monomial(alphabet, cartan, tail, random_coefficient(rng, alphabet))
    return out


def sample(alphabet, count, seed=0, max_degree=6):
    rng = random.Random(seed)
    return [random_element(rng, alphabet, max_degree) for _ in range(count)]
