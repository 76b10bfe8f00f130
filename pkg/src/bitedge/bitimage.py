"""Bit-packed bilevel rasters with word-parallel operations.

Conventions used throughout the package:

* one pixel is one bit: 1 is white (background), 0 is black (figure);
* rows are packed into 64-bit words, most significant bit first, so the
  MSB of a word is its leftmost pixel (this matches raw PBM byte order);
* every row is padded to a whole number of words and the padding bits
  are kept at 1 (white) by every public operation, which lets a
  white-border horizontal shift run without per-row special cases.
"""

from __future__ import annotations

import enum

import numpy as np

WORD_BITS = 64

_ONE = np.uint64(1)
_CARRY = np.uint64(WORD_BITS - 1)
_MSB = np.uint64(1 << (WORD_BITS - 1))
_ALL_ONES = np.uint64(2**WORD_BITS - 1)
_ZERO = np.uint64(0)


class PixelColor(enum.IntEnum):
    """Pixel values; the numeric value is the stored bit."""

    BLACK = 0
    WHITE = 1


class Direction(enum.Enum):
    """Unit shift directions, as (dx, dy) with y growing downwards."""

    LEFT = (-1, 0)
    RIGHT = (1, 0)
    UP = (0, -1)
    DOWN = (0, 1)

    @property
    def dx(self) -> int:
        return self.value[0]

    @property
    def dy(self) -> int:
        return self.value[1]

    @property
    def opposite(self) -> Direction:
        return Direction((-self.value[0], -self.value[1]))


class BorderPolicy(enum.Enum):
    """Fill rule for pixels referenced outside the raster."""

    WHITE_OUTSIDE = 1
    BLACK_OUTSIDE = 0

    @property
    def fill_bit(self) -> int:
        return self.value

    @property
    def fill_color(self) -> PixelColor:
        return PixelColor(self.value)


class BitImage:
    """Immutable bit-packed bilevel raster.

    All operations return fresh images; an instance never changes after
    construction and may be shared freely between threads. Bulk
    operations (invert, AND, OR, shift) work on whole 64-bit words;
    `get`/`set` exist for tests and generators, not for algorithms.
    """

    __slots__ = ("width", "height", "_words", "_pad_mask")

    def __init__(self, width: int, height: int, words: np.ndarray):
        """Wrap a words array directly (shape height x words_per_row,
        dtype uint64). Takes ownership of `words`, forces the padding
        bits to 1 and freezes it. Prefer `filled` or `from_array`.
        """
        if not isinstance(width, int) or not isinstance(height, int):
            raise TypeError("width and height must be ints")
        if width < 1 or height < 1:
            raise ValueError(f"image dimensions must be at least 1x1, got {width}x{height}")
        words_per_row = (width + WORD_BITS - 1) // WORD_BITS
        words = np.asarray(words)
        if words.dtype != np.uint64 or words.shape != (height, words_per_row):
            raise ValueError(
                f"words must be uint64 with shape ({height}, {words_per_row}), "
                f"got {words.dtype} {words.shape}"
            )
        words = np.ascontiguousarray(words)
        if not words.flags.writeable:
            words = words.copy()
        rem = width % WORD_BITS
        pad = _ZERO if rem == 0 else np.uint64((1 << (WORD_BITS - rem)) - 1)
        if pad:
            words[:, -1] |= pad
        words.setflags(write=False)
        self.width = width
        self.height = height
        self._words = words
        self._pad_mask = pad

    # -- constructors -------------------------------------------------

    @classmethod
    def filled(cls, width: int, height: int, color: PixelColor) -> BitImage:
        """Raster of the given size with every pixel set to `color`."""
        if width < 1 or height < 1:
            raise ValueError(f"image dimensions must be at least 1x1, got {width}x{height}")
        words_per_row = (width + WORD_BITS - 1) // WORD_BITS
        fill = _ALL_ONES if color == PixelColor.WHITE else _ZERO
        return cls(width, height, np.full((height, words_per_row), fill, dtype=np.uint64))

    @classmethod
    def from_array(cls, array) -> BitImage:
        """Pack a 2-d array of pixel bits (nonzero = white, 0 = black)."""
        a = np.asarray(array)
        if a.ndim != 2:
            raise ValueError(f"expected a 2-d array, got shape {a.shape}")
        height, width = a.shape
        if width < 1 or height < 1:
            raise ValueError(f"image dimensions must be at least 1x1, got {width}x{height}")
        words_per_row = (width + WORD_BITS - 1) // WORD_BITS
        bits = np.ones((height, words_per_row * WORD_BITS), dtype=np.uint8)
        bits[:, :width] = a != 0
        packed = np.packbits(bits, axis=1)
        words = packed.view(">u8").astype(np.uint64)
        return cls(width, height, words)

    # -- low-level views ----------------------------------------------

    @property
    def words(self) -> np.ndarray:
        """The packed words (read-only), shape (height, words_per_row)."""
        return self._words

    @property
    def words_per_row(self) -> int:
        return self._words.shape[1]

    def to_array(self) -> np.ndarray:
        """Unpack to a uint8 array of pixel bits, shape (height, width)."""
        as_bytes = self._words.astype(">u8").view(np.uint8)
        bits = np.unpackbits(as_bytes.reshape(self.height, -1), axis=1)
        return bits[:, : self.width]

    # -- single-pixel access (tests and generators only) ---------------

    def _check_coords(self, x: int, y: int) -> None:
        if not (0 <= x < self.width and 0 <= y < self.height):
            raise IndexError(
                f"pixel ({x}, {y}) out of range for {self.width}x{self.height} image"
            )

    def get(self, x: int, y: int) -> PixelColor:
        self._check_coords(x, y)
        word = int(self._words[y, x // WORD_BITS])
        bit = (word >> (WORD_BITS - 1 - (x % WORD_BITS))) & 1
        return PixelColor(bit)

    def set(self, x: int, y: int, color: PixelColor) -> BitImage:
        """New image with one pixel changed (this one is left untouched)."""
        self._check_coords(x, y)
        words = self._words.copy()
        mask = 1 << (WORD_BITS - 1 - (x % WORD_BITS))
        word = int(words[y, x // WORD_BITS])
        word = word | mask if color == PixelColor.WHITE else word & ~mask
        words[y, x // WORD_BITS] = np.uint64(word & (2**WORD_BITS - 1))
        return BitImage(self.width, self.height, words)

    # -- word-parallel operations --------------------------------------

    def invert(self) -> BitImage:
        """Flip every pixel (padding is re-forced to white)."""
        return BitImage(self.width, self.height, ~self._words)

    def __invert__(self) -> BitImage:
        return self.invert()

    def _require_same_shape(self, other: BitImage, op: str) -> None:
        if (self.width, self.height) != (other.width, other.height):
            raise ValueError(
                f"{op} needs identical dimensions: "
                f"{self.width}x{self.height} vs {other.width}x{other.height}"
            )

    def __and__(self, other: BitImage) -> BitImage:
        if not isinstance(other, BitImage):
            return NotImplemented
        self._require_same_shape(other, "AND")
        return BitImage(self.width, self.height, self._words & other._words)

    def __or__(self, other: BitImage) -> BitImage:
        if not isinstance(other, BitImage):
            return NotImplemented
        self._require_same_shape(other, "OR")
        return BitImage(self.width, self.height, self._words | other._words)

    def shift(self, direction: Direction, border: BorderPolicy = BorderPolicy.WHITE_OUTSIDE) -> BitImage:
        """Move the whole raster one pixel towards `direction`.

        out(x, y) = in(x - dx, y - dy); pixels that would come from
        outside the raster take the border fill bit. Horizontal shifts
        carry bits across word boundaries.
        """
        fill = border.fill_bit
        src = self._words
        if direction is Direction.DOWN:
            out = np.empty_like(src)
            out[1:] = src[:-1]
            out[0] = _ALL_ONES if fill else _ZERO
        elif direction is Direction.UP:
            out = np.empty_like(src)
            out[:-1] = src[1:]
            out[-1] = _ALL_ONES if fill else _ZERO
        elif direction is Direction.RIGHT:
            out = src >> _ONE
            if src.shape[1] > 1:
                out[:, 1:] |= src[:, :-1] << _CARRY
            if fill:
                out[:, 0] |= _MSB  # logical shift already left a 0 there
        else:  # LEFT
            out = src << _ONE
            if src.shape[1] > 1:
                out[:, :-1] |= src[:, 1:] >> _CARRY
            # pixel width-1 is sourced from outside the raster
            last = _ONE << np.uint64(WORD_BITS - 1 - ((self.width - 1) % WORD_BITS))
            if fill:
                out[:, -1] |= last
            else:
                out[:, -1] &= ~last
        return BitImage(self.width, self.height, out)

    # -- queries --------------------------------------------------------

    def count_black(self) -> int:
        """Number of black pixels, ignoring the padding bits."""
        ones = int(np.bitwise_count(self._words).sum(dtype=np.int64))
        pad_per_row = self.words_per_row * WORD_BITS - self.width
        white = ones - self.height * pad_per_row
        return self.width * self.height - white

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitImage):
            return NotImplemented
        if (self.width, self.height) != (other.width, other.height):
            return False
        # padding is normalized, so word equality is pixel equality
        return bool(np.array_equal(self._words, other._words))

    def __hash__(self) -> int:
        return hash((self.width, self.height, self._words.tobytes()))

    def __repr__(self) -> str:
        return f"BitImage({self.width}x{self.height}, black={self.count_black()})"

    def to_text(self) -> str:
        """Rows of '#' (black) and '.' (white); debugging aid."""
        rows = self.to_array()
        return "\n".join("".join(".#"[1 - b] for b in row) for row in rows)


def first_difference(a: BitImage, b: BitImage) -> tuple[int, int] | None:
    """(x, y) of the first visible pixel, in row-major order, where the
    two rasters differ; None when they agree everywhere."""
    if (a.width, a.height) != (b.width, b.height):
        raise ValueError(
            f"cannot diff {a.width}x{a.height} against {b.width}x{b.height}"
        )
    diff = a.to_array() != b.to_array()
    ys, xs = np.nonzero(diff)
    if ys.size == 0:
        return None
    return int(xs[0]), int(ys[0])
