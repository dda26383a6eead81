import random
import string

from django.test import SimpleTestCase

from apps.preprocess.tokenizer import (
    CAMEL_CASED,
    CHARACTER_TOKENS,
    DOUBLE_SPACE,
    LINE_END,
    LINE_START,
    NUMBER,
    OTHER,
    TABULATOR,
    TOKEN_NAMES,
    UNDERSCORED,
    TokenSequence,
    ngrams,
    tokenize_line,
)


class TokenizeLineTests(SimpleTestCase):
    def test_line_is_framed_by_boundary_tokens(self):
        tokens = tokenize_line("The build fails.").tokens
        self.assertEqual(tokens[0], LINE_START)
        self.assertEqual(tokens[-1], LINE_END)
        self.assertEqual(tokens[1:-1], ("The", "build", "fails", "Jdot"))

    def test_empty_line_has_only_boundaries(self):
        self.assertEqual(tokenize_line("").tokens, (LINE_START, LINE_END))

    def test_camel_case_word_then_bracket(self):
        tokens = tokenize_line("getUser(").tokens
        self.assertEqual(tokens, (LINE_START, CAMEL_CASED, "Jroundbracketopen", LINE_END))

    def test_underscored_words_and_numbers(self):
        tokens = tokenize_line("max_pool_size = 42").tokens
        self.assertEqual(tokens, (LINE_START, UNDERSCORED, "Jequals", NUMBER, LINE_END))

    def test_number_inside_word_is_not_replaced(self):
        self.assertIn("utf8", tokenize_line("utf8").tokens)

    def test_tab_and_space_runs(self):
        tokens = tokenize_line("\tat  x").tokens
        self.assertEqual(tokens, (LINE_START, TABULATOR, "at", DOUBLE_SPACE, "x", LINE_END))

    def test_each_space_run_is_one_token(self):
        tokens = tokenize_line("a     b").tokens
        self.assertEqual(tokens.count(DOUBLE_SPACE), 1)

    def test_every_listed_character_has_its_own_token(self):
        for char, token in CHARACTER_TOKENS.items():
            with self.subTest(char=char):
                self.assertEqual(tokenize_line(char).tokens, (LINE_START, token, LINE_END))

    def test_unlisted_characters_become_other(self):
        self.assertEqual(tokenize_line("é").tokens, (LINE_START, OTHER, LINE_END))

    def test_words_keep_their_case(self):
        self.assertIn("ERROR", tokenize_line("ERROR happened").tokens)

    def test_results_are_memoized(self):
        tokenize_line("a line seen twice")
        hits = tokenize_line.cache_info().hits
        tokenize_line("a line seen twice")
        self.assertEqual(tokenize_line.cache_info().hits, hits + 1)

    def test_sequence_without_boundaries_is_rejected(self):
        with self.assertRaises(ValueError):
            TokenSequence(("word",))

    def test_boundary_names_inside_a_line_become_other(self):
        self.assertEqual(tokenize_line("see Jlinestart here").tokens, (LINE_START, "see", OTHER, "here", LINE_END))
        self.assertEqual(
            tokenize_line("(Jlineend)").tokens,
            (LINE_START, "Jroundbracketopen", OTHER, "Jroundbracketclose", LINE_END),
        )


class NgramTests(SimpleTestCase):
    def test_order_is_by_length_then_position(self):
        grams = ngrams(tokenize_line("a b"), 1, 2)
        self.assertEqual(
            grams,
            [LINE_START, "a", "b", LINE_END, f"{LINE_START} a", "a b", f"b {LINE_END}"],
        )

    def test_semicolon_at_line_end(self):
        self.assertIn("Jsemicolon Jlineend", ngrams(tokenize_line("return value;")))

    def test_invalid_range(self):
        with self.assertRaises(ValueError):
            ngrams(tokenize_line("x"), 2, 1)


class TokenizerLawTests(SimpleTestCase):
    alphabet = string.ascii_letters + string.digits + string.punctuation + "  \t\t_éü€"

    def random_line(self, rng):
        return "".join(rng.choice(self.alphabet) for _ in range(rng.randint(0, 60)))

    def assert_valid(self, sequence):
        self.assertEqual(sequence.tokens[0], LINE_START)
        self.assertEqual(sequence.tokens[-1], LINE_END)
        self.assertEqual(sequence.tokens.count(LINE_START), 1)
        self.assertEqual(sequence.tokens.count(LINE_END), 1)
        for token in sequence.tokens[1:-1]:
            self.assertTrue(token in TOKEN_NAMES or (token.isascii() and token.isalnum()), token)

    def test_random_lines(self):
        rng = random.Random(0)
        for _ in range(10_000):
            line = self.random_line(rng)
            if rng.random() < 0.05:
                line += rng.choice((" Jlinestart", " Jlineend", "Jlineend"))
            if rng.random() < 0.2:
                line += ";"
            sequence = tokenize_line(line)
            self.assert_valid(sequence)
            grams = ngrams(sequence, 1, 3)
            self.assertEqual(len(grams), 3 * len(sequence) - 3)
            if line.endswith(";"):
                self.assertIn("Jsemicolon Jlineend", grams)
