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
"""Prints the primary composites reachable from the test repertoire.

Output is a C++ initializer list of {first, mark, composite} used by the
hand-written normalization oracle in unicode_test.cpp.
"""
import unicodedata

BASES = "aeiounsmbgAEIOUNSMBG"
MARKS = [0x0300, 0x0301, 0x0304, 0x030C, 0x0323, 0x0329]

seen, frontier, rows = set(BASES), list(BASES), []
while frontier:
    first = frontier.pop()
    for mark in MARKS:
        composed = unicodedata.normalize("NFC", first + chr(mark))
        if len(composed) == 1 and unicodedata.decomposition(composed).split() == [
                "%04X" % ord(first), "%04X" % mark]:
            rows.append((ord(first), mark, ord(composed)))
            if composed not in seen:
                seen.add(composed)
                frontier.append(composed)
for first, mark, composed in sorted(rows):
    print("    {0x%04X, 0x%04X, 0x%04X}," % (first, mark, composed))
