#!/usr/bin/env python3
# Copyright 2026 The yadr Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes the seeded template corpus used by the decoding tests.

Sentences are built from everyday Yoruba words whose stripped forms
collide (oko/ọkọ/ọkọ̀, ìlú/ìlù, owó/ọwọ́, ìgbà/igbá, ti/tí, lọ/lo,
kò/kọ/kọ́, jẹ/jẹ́, wá/wa, ní/ni), placed so the neighbouring words decide
the right variant.

Usage: make_corpus.py OUT [LINES] [SEED]
"""
import random
import sys
import unicodedata

SUBJECTS = ["mo", "ó", "a", "wọ́n"]
PLACES = ["èkó", "ìbàdàn", "ọ̀yọ́", "abẹ́òkúta", "òṣogbo", "ilé-ifẹ̀"]
TIMES = ["lánàá", "lónìí", "ní àárọ̀", "ní alẹ́", "ní ọ̀sán"]
OWNERS = ["mi", "rẹ̀", "wa", "wọn"]
FOODS = ["oúnjẹ", "ẹja", "ẹ̀wà", "iṣu"]
JOBS = ["olùkọ́", "àgbẹ̀", "oníṣòwò", "dókítà"]

TEMPLATES = [
    "{S} lọ sí oko {T} .",
    "{S} wọ ọkọ̀ lọ sí {P} .",
    "ọkọ {O} ti dé {T} .",
    "{S} lu ìlù ní ìlú {P} .",
    "{S} fún mi ní owó {T} .",
    "{S} fi ọwọ́ kọ lẹ́tà sí ọkọ {O} .",
    "{S} kò lọ sí ọjà {T} .",
    "{S} kọ́ ilé ní ìlú {P} .",
    "ní ìgbà yẹn , {S} jẹ {F} .",
    "{S} fọ́ igbá ní ilé {O} .",
    "ọkùnrin tí ó wá sí ilé {O} jẹ́ {J} .",
    "{S} ti lo owó {O} {T} .",
    "{S} rí ajá ní ọjà {T} .",
    "ó jẹ́ ọmọ ìlú {P} .",
    "{S} ti ṣe iṣẹ́ náà {T} .",
    "{J} ni ó wá sí ìlú wa .",
    "ìyá {O} ra {F} ní ọjà .",
    "{S} kò rí owó ní ọwọ́ {O} .",
    "{S} kọ́ èdè yorùbá ní ìgbà èwe .",
    "ọkọ̀ wa ti bàjẹ́ ní ọ̀nà {P} .",
]


def fill(template, rng):
    return template.format(
        S=rng.choice(SUBJECTS), P=rng.choice(PLACES), T=rng.choice(TIMES),
        O=rng.choice(OWNERS), F=rng.choice(FOODS), J=rng.choice(JOBS))


def main():
    out = sys.argv[1]
    lines = int(sys.argv[2]) if len(sys.argv) > 2 else 600
    seed = int(sys.argv[3]) if len(sys.argv) > 3 else 20190601
    rng = random.Random(seed)
    with open(out, "w", encoding="utf-8") as f:
        for _ in range(lines):
            f.write(unicodedata.normalize("NFC", fill(rng.choice(TEMPLATES), rng)) + "\n")


if __name__ == "__main__":
    main()
