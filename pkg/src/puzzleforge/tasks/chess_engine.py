"""Minimal chess rules engine: full legality, SAN, perft.

Covers castling, en passant, promotion, pins, and check/checkmate
detection. The goal is verification (replay a game, test a candidate move
for mate), not playing strength.
"""

from __future__ import annotations

import re

FILES = "abcdefgh"
WHITE_PIECES = "PNBRQK"
BLACK_PIECES = "pnbrqk"

KNIGHT_OFFSETS = ((1, 2), (2, 1), (2, -1), (1, -2), (-1, -2), (-2, -1), (-2, 1), (-1, 2))
KING_OFFSETS = ((0, 1), (1, 1), (1, 0), (1, -1), (0, -1), (-1, -1), (-1, 0), (-1, 1))
BISHOP_DIRS = ((1, 1), (1, -1), (-1, 1), (-1, -1))
ROOK_DIRS = ((0, 1), (0, -1), (1, 0), (-1, 0))


def sq(file: int, rank: int) -> int:
    return rank * 8 + file


def sq_name(square: int) -> str:
    return FILES[square % 8] + str(square // 8 + 1)


class IllegalMoveError(Exception):
    pass


class Move:
    __slots__ = ("frm", "to", "piece", "promo", "flag")

    def __init__(self, frm: int, to: int, piece: str, promo: str | None = None, flag: str = ""):
        self.frm = frm
        self.to = to
        self.piece = piece
        self.promo = promo
        self.flag = flag  # "", "ep", "castle_k", "castle_q", "double"

    def __repr__(self) -> str:  # pragma: no cover
        return f"Move({sq_name(self.frm)}{sq_name(self.to)}{self.promo or ''})"


class Board:
    """Mutable position with make/unmake; start position by default."""

    def __init__(self) -> None:
        self.squares: list[str | None] = [None] * 64
        back = "RNBQKBNR"
        for f in range(8):
            self.squares[sq(f, 0)] = back[f]
            self.squares[sq(f, 1)] = "P"
            self.squares[sq(f, 6)] = "p"
            self.squares[sq(f, 7)] = back[f].lower()
        self.white_to_move = True
        self.castling = {"K", "Q", "k", "q"}
        self.ep: int | None = None
        self.kings = {True: sq(4, 0), False: sq(4, 7)}
        self._undo: list[tuple] = []

    # ---- piece helpers ----

    def _own(self, piece: str | None, white: bool) -> bool:
        return piece is not None and (piece.isupper() == white)

    def _enemy(self, piece: str | None, white: bool) -> bool:
        return piece is not None and (piece.isupper() != white)

    # ---- attack detection ----

    def attacked(self, square: int, by_white: bool) -> bool:
        f, r = square % 8, square // 8
        pawn_dir = -1 if by_white else 1  # attacker sits one rank behind its push
        for df in (-1, 1):
            nf, nr = f + df, r + pawn_dir
            if 0 <= nf < 8 and 0 <= nr < 8:
                piece = self.squares[sq(nf, nr)]
                if piece == ("P" if by_white else "p"):
                    return True
        for df, dr in KNIGHT_OFFSETS:
            nf, nr = f + df, r + dr
            if 0 <= nf < 8 and 0 <= nr < 8:
                piece = self.squares[sq(nf, nr)]
                if piece == ("N" if by_white else "n"):
                    return True
        for df, dr in KING_OFFSETS:
            nf, nr = f + df, r + dr
            if 0 <= nf < 8 and 0 <= nr < 8:
                piece = self.squares[sq(nf, nr)]
                if piece == ("K" if by_white else "k"):
                    return True
        for dirs, hits in ((BISHOP_DIRS, "BQ"), (ROOK_DIRS, "RQ")):
            want = hits if by_white else hits.lower()
            for df, dr in dirs:
                nf, nr = f + df, r + dr
                while 0 <= nf < 8 and 0 <= nr < 8:
                    piece = self.squares[sq(nf, nr)]
                    if piece is not None:
                        if piece in want:
                            return True
                        break
                    nf += df
                    nr += dr
        return False

    def in_check(self, white: bool) -> bool:
        return self.attacked(self.kings[white], not white)

    # ---- move generation ----

    def pseudo_moves(self) -> list[Move]:
        white = self.white_to_move
        moves: list[Move] = []
        for square in range(64):
            piece = self.squares[square]
            if not self._own(piece, white):
                continue
            kind = piece.upper()
            f, r = square % 8, square // 8
            if kind == "P":
                self._pawn_moves(square, f, r, white, moves)
            elif kind == "N":
                for df, dr in KNIGHT_OFFSETS:
                    nf, nr = f + df, r + dr
                    if 0 <= nf < 8 and 0 <= nr < 8:
                        target = self.squares[sq(nf, nr)]
                        if not self._own(target, white):
                            moves.append(Move(square, sq(nf, nr), piece))
            elif kind == "K":
                for df, dr in KING_OFFSETS:
                    nf, nr = f + df, r + dr
                    if 0 <= nf < 8 and 0 <= nr < 8:
                        target = self.squares[sq(nf, nr)]
                        if not self._own(target, white):
                            moves.append(Move(square, sq(nf, nr), piece))
                self._castle_moves(white, moves)
            else:
                dirs: tuple = ()
                if kind in ("B", "Q"):
                    dirs += BISHOP_DIRS
                if kind in ("R", "Q"):
                    dirs += ROOK_DIRS
                for df, dr in dirs:
                    nf, nr = f + df, r + dr
                    while 0 <= nf < 8 and 0 <= nr < 8:
                        target = self.squares[sq(nf, nr)]
                        if self._own(target, white):
                            break
                        moves.append(Move(square, sq(nf, nr), piece))
                        if target is not None:
                            break
                        nf += df
                        nr += dr
        return moves

    def _pawn_moves(self, square: int, f: int, r: int, white: bool, moves: list[Move]) -> None:
        piece = self.squares[square]
        step = 1 if white else -1
        start_rank = 1 if white else 6
        promo_rank = 7 if white else 0
        one = sq(f, r + step)
        if self.squares[one] is None:
            if (r + step) == promo_rank:
                for promo in "QRBN":
                    moves.append(Move(square, one, piece, promo))
            else:
                moves.append(Move(square, one, piece))
            if r == start_rank:
                two = sq(f, r + 2 * step)
                if self.squares[two] is None:
                    moves.append(Move(square, two, piece, flag="double"))
        for df in (-1, 1):
            nf, nr = f + df, r + step
            if not (0 <= nf < 8 and 0 <= nr < 8):
                continue
            target_sq = sq(nf, nr)
            target = self.squares[target_sq]
            if self._enemy(target, white):
                if nr == promo_rank:
                    for promo in "QRBN":
                        moves.append(Move(square, target_sq, piece, promo))
                else:
                    moves.append(Move(square, target_sq, piece))
            elif target_sq == self.ep:
                moves.append(Move(square, target_sq, piece, flag="ep"))

    def _castle_moves(self, white: bool, moves: list[Move]) -> None:
        rank = 0 if white else 7
        king_sq = sq(4, rank)
        if self.kings[white] != king_sq or self.in_check(white):
            return
        piece = self.squares[king_sq]
        if ("K" if white else "k") in self.castling:
            if (
                self.squares[sq(5, rank)] is None
                and self.squares[sq(6, rank)] is None
                and not self.attacked(sq(5, rank), not white)
                and not self.attacked(sq(6, rank), not white)
            ):
                moves.append(Move(king_sq, sq(6, rank), piece, flag="castle_k"))
        if ("Q" if white else "q") in self.castling:
            if (
                self.squares[sq(3, rank)] is None
                and self.squares[sq(2, rank)] is None
                and self.squares[sq(1, rank)] is None
                and not self.attacked(sq(3, rank), not white)
                and not self.attacked(sq(2, rank), not white)
            ):
                moves.append(Move(king_sq, sq(2, rank), piece, flag="castle_q"))

    def legal_moves(self) -> list[Move]:
        white = self.white_to_move
        legal = []
        for move in self.pseudo_moves():
            self.make(move)
            if not self.in_check(white):
                legal.append(move)
            self.unmake()
        return legal

    # ---- make / unmake ----

    def make(self, move: Move) -> None:
        white = self.white_to_move
        captured = self.squares[move.to]
        captured_sq = move.to
        if move.flag == "ep":
            captured_sq = move.to + (-8 if white else 8)
            captured = self.squares[captured_sq]
            self.squares[captured_sq] = None
        self._undo.append(
            (move, captured, captured_sq, set(self.castling), self.ep, dict(self.kings))
        )
        self.squares[move.frm] = None
        self.squares[move.to] = (
            (move.promo if white else move.promo.lower()) if move.promo else move.piece
        )
        if move.piece.upper() == "K":
            self.kings[white] = move.to
            self.castling.discard("K" if white else "k")
            self.castling.discard("Q" if white else "q")
            if move.flag == "castle_k":
                rank = 0 if white else 7
                rook = self.squares[sq(7, rank)]
                self.squares[sq(7, rank)] = None
                self.squares[sq(5, rank)] = rook
            elif move.flag == "castle_q":
                rank = 0 if white else 7
                rook = self.squares[sq(0, rank)]
                self.squares[sq(0, rank)] = None
                self.squares[sq(3, rank)] = rook
        for square, right in ((sq(0, 0), "Q"), (sq(7, 0), "K"), (sq(0, 7), "q"), (sq(7, 7), "k")):
            if move.frm == square or move.to == square:
                self.castling.discard(right)
        self.ep = None
        if move.flag == "double":
            self.ep = (move.frm + move.to) // 2
        self.white_to_move = not white

    def unmake(self) -> None:
        move, captured, captured_sq, castling, ep, kings = self._undo.pop()
        self.white_to_move = not self.white_to_move
        white = self.white_to_move
        self.squares[move.frm] = move.piece
        self.squares[move.to] = None
        if captured is not None:
            self.squares[captured_sq] = captured
        if move.flag == "castle_k":
            rank = 0 if white else 7
            rook = self.squares[sq(5, rank)]
            self.squares[sq(5, rank)] = None
            self.squares[sq(7, rank)] = rook
        elif move.flag == "castle_q":
            rank = 0 if white else 7
            rook = self.squares[sq(3, rank)]
            self.squares[sq(3, rank)] = None
            self.squares[sq(0, rank)] = rook
        self.castling = castling
        self.ep = ep
        self.kings = kings

    # ---- game state ----

    def is_checkmate(self) -> bool:
        return self.in_check(self.white_to_move) and not self.legal_moves()

    # ---- SAN ----

    def san(self, move: Move, legal: list[Move] | None = None) -> str:
        """Core SAN without check/mate suffix."""
        if move.flag == "castle_k":
            return "O-O"
        if move.flag == "castle_q":
            return "O-O-O"
        kind = move.piece.upper()
        capture = self.squares[move.to] is not None or move.flag == "ep"
        dest = sq_name(move.to)
        if kind == "P":
            core = (FILES[move.frm % 8] + "x" + dest) if capture else dest
            if move.promo:
                core += "=" + move.promo
            return core
        if legal is None:
            legal = self.legal_moves()
        rivals = [
            m
            for m in legal
            if m.piece == move.piece and m.to == move.to and m.frm != move.frm
        ]
        disambig = ""
        if rivals:
            same_file = any(m.frm % 8 == move.frm % 8 for m in rivals)
            same_rank = any(m.frm // 8 == move.frm // 8 for m in rivals)
            if not same_file:
                disambig = FILES[move.frm % 8]
            elif not same_rank:
                disambig = str(move.frm // 8 + 1)
            else:
                disambig = sq_name(move.frm)
        return kind + disambig + ("x" if capture else "") + dest

    def san_with_suffix(self, move: Move) -> str:
        core = self.san(move)
        self.make(move)
        if self.is_checkmate():
            suffix = "#"
        elif self.in_check(self.white_to_move):
            suffix = "+"
        else:
            suffix = ""
        self.unmake()
        return core + suffix

    def parse_san(self, text: str) -> Move:
        """Match a SAN token against the legal moves; raises IllegalMoveError."""
        token = text.strip().rstrip("+#!?").replace("0", "O")
        if not token:
            raise IllegalMoveError("empty move")
        legal = self.legal_moves()
        matches = [m for m in legal if self.san(m, legal) == token]
        if not matches:
            # Tolerate an omitted capture marker or redundant disambiguation.
            squashed = token.replace("x", "")
            matches = [m for m in legal if self.san(m, legal).replace("x", "") == squashed]
        if not matches:
            raise IllegalMoveError(f"no legal move matches {text!r}")
        if len(matches) > 1:
            raise IllegalMoveError(f"ambiguous move {text!r}")
        return matches[0]

    def play_san(self, text: str) -> Move:
        move = self.parse_san(text)
        self.make(move)
        return move


def replay_moves(tokens: list[str]) -> Board:
    board = Board()
    for token in tokens:
        board.play_san(token)
    return board


_MOVETEXT_NUM_RE = re.compile(r"\d+\.(\.\.)?")


def movetext_tokens(movetext: str) -> list[str]:
    tokens = []
    for raw in movetext.replace("\n", " ").split():
        raw = _MOVETEXT_NUM_RE.sub("", raw).strip()
        if raw and raw not in ("*", "1-0", "0-1", "1/2-1/2"):
            tokens.append(raw)
    return tokens


def perft(board: Board, depth: int) -> int:
    if depth == 0:
        return 1
    total = 0
    for move in board.legal_moves():
        board.make(move)
        total += perft(board, depth - 1)
        board.unmake()
    return total
