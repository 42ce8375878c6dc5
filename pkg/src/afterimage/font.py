"""Blocky square-unit glyphs for rendering words into target patterns.

Each glyph is a small card of '#' (stroke) and '.' (blank) rows, five rows
tall with proportional width, drawn with one-square-unit strokes.  Word
rendering doubles every stroke cell for two-unit stroke thickness, so the
widest five-letter words still fit a 32-square-wide canvas grid.
"""

from __future__ import annotations

Glyph = tuple[str, ...]

GLYPHS: dict[str, Glyph] = {
    "a": ("...", "##.", ".##", "#.#", ".##"),
    "b": ("#..", "#..", "##.", "#.#", "##."),
    "c": ("...", ".##", "#..", "#..", ".##"),
    "d": ("..#", "..#", ".##", "#.#", ".##"),
    "e": ("...", ".##", "#.#", "##.", ".##"),
    "f": (".##", ".#.", "###", ".#.", ".#."),
    "g": (".##", "#.#", ".##", "..#", "##."),
    "h": ("#..", "#..", "##.", "#.#", "#.#"),
    "i": ("#", ".", "#", "#", "#"),
    "j": ("..#", "...", "..#", "#.#", ".#."),
    "k": ("#..", "#.#", "##.", "#.#", "#.#"),
    "l": ("#", "#", "#", "#", "#"),
    "m": ("....", "####", "#..#", "#..#", "#..#"),
    "n": ("...", "##.", "#.#", "#.#", "#.#"),
    "o": ("...", ".#.", "#.#", "#.#", ".#."),
    "p": ("...", "##.", "#.#", "##.", "#.."),
    "q": ("...", ".##", "#.#", ".##", "..#"),
    "r": ("...", "###", "#..", "#..", "#.."),
    "s": (".##", "#..", ".#.", "..#", "##."),
    "t": ("#..", "###", "#..", "#..", ".##"),
    "u": ("...", "#.#", "#.#", "#.#", ".##"),
    "v": ("...", "#.#", "#.#", "#.#", ".#."),
    "w": ("....", "#..#", "#..#", "#..#", "####"),
    "x": ("...", "#.#", ".#.", ".#.", "#.#"),
    "y": ("...", "#.#", "#.#", ".##", "..#"),
    "z": ("...", "###", ".#.", "#..", "###"),
    "A": (".#.", "#.#", "###", "#.#", "#.#"),
    "B": ("##.", "#.#", "##.", "#.#", "##."),
    "C": (".##", "#..", "#..", "#..", ".##"),
    "D": ("##.", "#.#", "#.#", "#.#", "##."),
    "E": ("###", "#..", "##.", "#..", "###"),
    "F": ("###", "#..", "##.", "#..", "#.."),
    "G": (".##", "#..", "#.#", "#.#", ".##"),
    "H": ("#.#", "#.#", "###", "#.#", "#.#"),
    "I": ("###", ".#.", ".#.", ".#.", "###"),
    "J": ("..#", "..#", "..#", "#.#", ".#."),
    "K": ("#.#", "#.#", "##.", "#.#", "#.#"),
    "L": ("#..", "#..", "#..", "#..", "###"),
    "M": ("#..#", "####", "#..#", "#..#", "#..#"),
    "N": ("#..#", "##.#", "#.##", "#..#", "#..#"),
    "O": (".#.", "#.#", "#.#", "#.#", ".#."),
    "P": ("##.", "#.#", "##.", "#..", "#.."),
    "Q": (".#.", "#.#", "#.#", ".#.", "..#"),
    "R": ("##.", "#.#", "##.", "#.#", "#.#"),
    "S": (".##", "#..", ".#.", "..#", "##."),
    "T": ("###", ".#.", ".#.", ".#.", ".#."),
    "U": ("#.#", "#.#", "#.#", "#.#", "###"),
    "V": ("#.#", "#.#", "#.#", ".#.", ".#."),
    "W": ("#..#", "#..#", "#..#", "#..#", "####"),
    "X": ("#.#", "#.#", ".#.", "#.#", "#.#"),
    "Y": ("#.#", "#.#", ".#.", ".#.", ".#."),
    "Z": ("###", "..#", ".#.", "#..", "###"),
}

GLYPH_ROWS = 5
LETTER_GAP = 1  # blank squares between letters, regardless of thickness


def glyph_width(ch: str) -> int:
    return len(GLYPHS[ch][0])


def word_size(word: str, thickness: int) -> tuple[int, int]:
    """(width, height) in squares of the rendered word."""
    width = sum(glyph_width(ch) * thickness for ch in word)
    width += (len(word) - 1) * LETTER_GAP
    return width, GLYPH_ROWS * thickness


def render_word(word: str, thickness: int) -> list[list[bool]]:
    """Stroke mask for a word, row-major, True where a stroke covers a square."""
    width, height = word_size(word, thickness)
    mask = [[False] * width for _ in range(height)]
    x = 0
    for ch in word:
        card = GLYPHS[ch]
        for r, row in enumerate(card):
            for c, cell in enumerate(row):
                if cell != "#":
                    continue
                for dr in range(thickness):
                    for dc in range(thickness):
                        mask[r * thickness + dr][x + c * thickness + dc] = True
        x += glyph_width(ch) * thickness + LETTER_GAP
    return mask
