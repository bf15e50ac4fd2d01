"""
Unit Tests for the Attack Suite

Letter statistics, substitution breaking, keystream reuse, the Geffe
correlation attack, Berlekamp-Massey and replay detection.
"""

import random
import statistics

import numpy as np
import pytest

from cipherlab.cipher import SubstitutionAlphabet, mono_substitute, random_alphabet, xor_bytes, xor_encrypt
from cipherlab.config import HillClimbBudget
from cipherlab.cryptanalysis import (
    AttackStatus,
    FrequencyProfile,
    QuadgramModel,
    ReplayReason,
    berlekamp_massey,
    berlekamp_massey_report,
    break_monoalphabetic,
    character_accuracy,
    chi_squared,
    chi_squared_text,
    correlation_attack_geffe,
    corpus_sentences,
    detect_replay,
    dictionary_hit_rate,
    english_reference,
    english_wordlist,
    frame_digest,
    index_of_coincidence,
    keystream_reuse_attack,
    letter_frequency,
    quadgram_model,
    recover_keystream_from_depth,
    replay_report,
    split_sentences,
    write_snapshots,
)
from cipherlab.cryptanalysis.cli import run_correlation_demo
from cipherlab.errors import AnalysisError
from cipherlab.keystream import (
    GeffeSpec,
    LfsrState,
    SecretKey,
    geffe_keystream,
    lfsr_keystream,
    make_lfsr,
    primitive_spec,
    rc4_keystream,
)
from cipherlab.nl_layer import lexicon_load_file, translate_mix


class TestStatistics:
    """Test suite for frequency profiles and their statistics."""

    def test_corpus_index_of_coincidence(self, corpus_text):
        assert 0.060 <= index_of_coincidence(corpus_text) <= 0.075

    def test_index_of_coincidence_survives_substitution(self, english_sample):
        """Relabelling letters leaves the IoC exactly unchanged."""
        rng = random.Random(9)
        base = index_of_coincidence(english_sample)
        for _ in range(10):
            assert index_of_coincidence(mono_substitute(english_sample, random_alphabet(rng))) == base

    def test_uniform_text_is_low(self):
        text = "ABCDEFGHIJKLMNOPQRSTUVWXYZ" * 40
        assert index_of_coincidence(text) == pytest.approx(1 / 26, abs=0.002)

    def test_reference_top_letter(self):
        assert english_reference().top() == "E"

    def test_chi_squared_of_reference_is_zero(self):
        reference = english_reference()
        assert chi_squared(reference, reference, 1000) == pytest.approx(0.0)

    def test_chi_squared_prefers_english_over_uniform(self, english_sample):
        rng = random.Random(31)
        uniform = "".join(rng.choice("ABCDEFGHIJKLMNOPQRSTUVWXYZ") for _ in range(2000))
        reference = english_reference()
        assert chi_squared_text(english_sample, reference) < chi_squared_text(uniform, reference)

    def test_chi_squared_rises_under_substitution(self, english_sample):
        rot13 = SubstitutionAlphabet("NOPQRSTUVWXYZABCDEFGHIJKLM")
        reference = english_reference()
        assert chi_squared_text(mono_substitute(english_sample, rot13), reference) > chi_squared_text(
            english_sample, reference
        )

    def test_mixed_text_drifts_from_english(self, data_dir, corpus_text):
        mixed, _ = translate_mix(corpus_text, lexicon_load_file(data_dir / "spanglish.json"))
        reference = english_reference()
        assert chi_squared_text(mixed, reference) > chi_squared_text(corpus_text, reference)

    def test_profile_must_sum_to_one(self):
        with pytest.raises(AnalysisError):
            FrequencyProfile({"A": 0.5, "B": 0.4})

    def test_no_letters_rejected(self):
        with pytest.raises(AnalysisError):
            letter_frequency("1234 !!")
        with pytest.raises(AnalysisError):
            index_of_coincidence("a")

    def test_letter_frequency_ignores_case(self):
        profile = letter_frequency("aAbB")
        assert profile["A"] == pytest.approx(0.5)
        assert profile.ranked().startswith("AB")

    def test_character_accuracy(self):
        assert character_accuracy("attack", "attack") == 1.0
        assert character_accuracy("attacx", "attack") == pytest.approx(5 / 6)
        assert character_accuracy("", "attack") == 0.0

    def test_dictionary_hit_rate(self):
        words = {"the", "river", "town"}
        assert dictionary_hit_rate("The river, el pueblo.", words) == pytest.approx(0.5)
        assert dictionary_hit_rate("", words) == 0.0

    def test_split_sentences(self):
        assert split_sentences("One.  Two?\nThree!") == ["One.", "Two?", "Three!"]

    def test_corpus_has_sentences(self):
        assert len(corpus_sentences()) >= 20

    def test_snapshots_match_computed_models(self, scratch_data_dir):
        """Written snapshots reload to the same profile and quadgram scores."""
        for name in ("english_profile.json", "quadgrams.json"):
            (scratch_data_dir / name).unlink(missing_ok=True)
        before = english_reference(scratch_data_dir).to_dict()
        score = quadgram_model(scratch_data_dir).score("THEQUICKBROWNFOX")
        paths = write_snapshots(scratch_data_dir)
        assert paths["profile"].exists() and paths["quadgrams"].exists()
        after = english_reference(scratch_data_dir).to_dict()
        assert after == pytest.approx(before)
        assert quadgram_model(scratch_data_dir).score("THEQUICKBROWNFOX") == pytest.approx(score)

    def test_bundled_snapshots_match_corpus(self, data_dir, corpus_text):
        """The shipped snapshots hold the add-one profile and quadgram counts of the corpus."""
        assert (data_dir / "english_profile.json").exists()
        assert (data_dir / "quadgrams.json").exists()
        derived = FrequencyProfile.from_counts(
            np.array([sum(1 for ch in corpus_text.upper() if ch == c) + 1 for c in "ABCDEFGHIJKLMNOPQRSTUVWXYZ"])
        )
        assert english_reference(data_dir).to_dict() == pytest.approx(derived.to_dict())
        shipped = quadgram_model(data_dir)
        computed = QuadgramModel.from_text(corpus_text)
        assert shipped.total == computed.total
        assert np.allclose(shipped.table, computed.table)


class TestBreakMonoalphabetic:
    """Test suite for quadgram hill climbing."""

    def test_unsubstituted_text_comes_back(self, english_sample, fast_budget):
        report = break_monoalphabetic(english_sample, budget=fast_budget, rng_seed=1, truth=english_sample)
        assert report.succeeded
        assert report.accuracy >= 0.95

    def test_breaks_random_key(self, english_sample):
        key = random_alphabet(random.Random(21))
        report = break_monoalphabetic(
            mono_substitute(english_sample, key),
            budget=HillClimbBudget(restarts=3, stall_limit=1000),
            rng_seed=2,
            truth=english_sample,
        )
        assert report.accuracy >= 0.8
        assert len(report.key) == 26

    def test_same_seed_same_result(self, english_sample, fast_budget):
        ct = mono_substitute(english_sample, random_alphabet(random.Random(5)))
        first = break_monoalphabetic(ct, budget=fast_budget, rng_seed=3)
        second = break_monoalphabetic(ct, budget=fast_budget, rng_seed=3)
        assert first.plaintext == second.plaintext
        assert first.key == second.key

    def test_no_letters_fails_without_raising(self):
        report = break_monoalphabetic("1234 5678")
        assert report.status == AttackStatus.FAILED

    @pytest.mark.slow
    def test_median_accuracy_over_trials(self, corpus_text):
        """2000-letter samples under 20 random keys: median accuracy at least 90%."""
        words = corpus_text.split()
        rng = random.Random(77)
        budget = HillClimbBudget(restarts=6, stall_limit=1500)
        accuracies = []
        for trial in range(20):
            start = rng.randrange(len(words) // 2)
            chunk, letters = [], 0
            for word in words[start:]:
                chunk.append(word)
                letters += sum(1 for c in word if c.isalpha())
                if letters >= 2000:
                    break
            plain = " ".join(chunk)
            ct = mono_substitute(plain, random_alphabet(rng))
            accuracies.append(break_monoalphabetic(ct, budget=budget, rng_seed=trial, truth=plain).accuracy)
        assert statistics.median(accuracies) >= 0.90


class TestKeystreamReuse:
    """Test suite for crib dragging and depth recovery."""

    @staticmethod
    def two_time_pad(p1: str, p2: str):
        ks = rc4_keystream(SecretKey(b"Key"), max(len(p1), len(p2)))
        return xor_encrypt(p1.encode(), ks), xor_encrypt(p2.encode(), ks)

    def test_crib_exposes_other_plaintext(self):
        """' the ' at offset 6 of one plaintext reveals ' at d' in the other."""
        c1, c2 = self.two_time_pad("attack at dawn", "defend the hill")
        report = keystream_reuse_attack(c1, c2, " the ")
        assert report.status == AttackStatus.OK
        at_six = next(c for c in report.candidates if c.offset == 6)
        assert at_six.value == " at d"
        assert at_six.score == 1.0

    def test_crib_longer_than_overlap_fails(self):
        c1, c2 = self.two_time_pad("attack at dawn", "defend the hill")
        report = keystream_reuse_attack(c1, c2, " the enemy will not come through ")
        assert report.status == AttackStatus.FAILED
        assert report.plaintext is None

    def test_identical_ciphertexts_are_degenerate(self):
        c1, _ = self.two_time_pad("attack at dawn", "defend the hill")
        report = keystream_reuse_attack(c1, c1, " the ")
        assert report.status == AttackStatus.DEGENERATE

    def test_empty_crib_rejected(self):
        with pytest.raises(AnalysisError):
            keystream_reuse_attack(b"ab", b"cd", "")

    def test_independent_keystreams_never_look_plausible(self):
        """Without reuse, no crib offset reaches the printable threshold."""
        rng = random.Random(404)
        sentences = [s for s in corpus_sentences() if len(s) >= 80]
        for _ in range(20):
            p1, p2 = (s[:80].encode() for s in rng.sample(sentences, 2))
            c1 = xor_encrypt(p1, rng.randbytes(len(p1)))
            c2 = xor_encrypt(p2, rng.randbytes(len(p2)))
            report = keystream_reuse_attack(c1, c2, " the river rose ", printable_threshold=0.85)
            assert report.status == AttackStatus.FAILED
            assert report.scores["printable"] < 0.85

    def test_cancellation_is_generator_independent(self):
        """LFSR and RC4 keystreams both cancel to the same plaintext difference."""
        p1, p2 = b"attack at dawn", b"defend the hill"
        lfsr_ks, _ = lfsr_keystream(make_lfsr(9, [9, 5], "100110111"), 8 * len(p2))
        rc4_ks = rc4_keystream(SecretKey(b"Key"), len(p2))
        reports = []
        for ks in (lfsr_ks, rc4_ks):
            c1, c2 = xor_encrypt(p1, ks), xor_encrypt(p2, ks)
            assert xor_bytes(c1, c2[:len(c1)]) == xor_bytes(p1, p2[:len(p1)])
            reports.append(keystream_reuse_attack(c1, c2, " the "))
        assert reports[0].details["xor_hex"] == reports[1].details["xor_hex"]
        assert [c.value for c in reports[0].candidates] == [c.value for c in reports[1].candidates]

    def test_depth_recovery(self):
        """Ten sentences under one keystream come back mostly readable."""
        sentences = [s for s in corpus_sentences() if len(s) >= 60][:10]
        ks = rc4_keystream(SecretKey(b"DepthKey"), 60).to_bytes()
        cts = [xor_encrypt(s[:60].encode(), ks) for s in sentences]
        key = recover_keystream_from_depth(cts)
        recovered = [xor_encrypt(c, key).decode("latin-1") for c in cts]
        accuracy = np.mean([character_accuracy(r, s[:60]) for r, s in zip(recovered, sentences)])
        assert accuracy >= 0.6

    def test_depth_needs_two_frames(self):
        with pytest.raises(AnalysisError):
            recover_keystream_from_depth([b"only one"])


class TestCorrelationAttack:
    """Test suite for the Geffe correlation attack."""

    def test_recovers_all_three_seeds(self):
        sel = make_lfsr(5, [5, 3], "10110")
        a = make_lfsr(7, [7, 6], "1100101")
        b = make_lfsr(9, [9, 5], "100110111")
        stream, _ = geffe_keystream(GeffeSpec(sel, a, b), 1000)
        report = correlation_attack_geffe(stream, a.spec, b.spec, sel.spec)
        assert report.status == AttackStatus.OK
        assert report.key == f"{sel.seed_int()},{a.seed_int()},{b.seed_int()}"
        assert report.details["seeds"]["tap_b"]["bits"] == "100110111"
        assert 0.65 <= report.scores["agreement_tap_a"] <= 0.85

    def test_random_seeds(self):
        rng = random.Random(12)
        specs = [primitive_spec(5), primitive_spec(7), primitive_spec(9)]
        states = [LfsrState.from_int(s, rng.randrange(1, 2 ** s.length)) for s in specs]
        stream, _ = geffe_keystream(GeffeSpec(*states), 1000)
        report = correlation_attack_geffe(stream, specs[1], specs[2], specs[0])
        assert report.key == ",".join(str(s.seed_int()) for s in states)

    @pytest.mark.slow
    def test_success_rate_over_forty_trials(self):
        """All three seeds come back in at least 38 of 40 seeded 1000-bit trials."""
        specs = [primitive_spec(5), primitive_spec(7), primitive_spec(9)]
        recovered = 0
        for trial in range(40):
            rng = random.Random(f"geffe:{trial}")
            states = [LfsrState.from_int(s, rng.randrange(1, 2 ** s.length)) for s in specs]
            stream, _ = geffe_keystream(GeffeSpec(*states), 1000)
            report = correlation_attack_geffe(stream, specs[1], specs[2], specs[0])
            if report.key == ",".join(str(s.seed_int()) for s in states):
                recovered += 1
        assert recovered >= 38

    def test_bundled_demo(self):
        report = run_correlation_demo()
        assert report.status == AttackStatus.OK
        assert report.details["matches_ground_truth"] is True

    def test_constant_selector_is_degenerate(self):
        """A selector stuck at 1 passes tap_a straight through."""
        sel = make_lfsr(1, [1], "1")
        a = make_lfsr(7, [7, 6], "1100101")
        b = make_lfsr(9, [9, 5], "100110111")
        stream, _ = geffe_keystream(GeffeSpec(sel, a, b), 600)
        report = correlation_attack_geffe(stream, a.spec, b.spec, sel.spec)
        assert report.status == AttackStatus.DEGENERATE
        assert "tap_a" in report.reason

    def test_unrelated_bits_fail(self):
        rng = random.Random(8)
        bits = "".join(rng.choice("01") for _ in range(1000))
        report = correlation_attack_geffe(bits, primitive_spec(7), primitive_spec(9), primitive_spec(5))
        assert report.status == AttackStatus.FAILED
        assert report.reason


class TestBerlekampMassey:
    """Test suite for linear complexity."""

    def test_alternating_bits(self):
        result = berlekamp_massey("0101010101")
        assert result.length == 2
        assert result.taps == frozenset({2})

    def test_all_zero(self):
        assert berlekamp_massey("0000000000").length == 0

    @pytest.mark.parametrize("length,taps,seed", [
        (5, [5, 3], "10110"),
        (7, [7, 6], "1100101"),
        (9, [9, 5], "100110111"),
    ])
    def test_recovers_lfsr_from_2l_bits(self, length, taps, seed):
        state = make_lfsr(length, taps, seed)
        bits = list(lfsr_keystream(state, 200)[0].digits)
        result = berlekamp_massey(bits[:2 * length])
        assert result.length == length
        assert result.taps == frozenset(taps)
        assert result.regenerate(bits, 200) == bits
        rebuilt = result.to_lfsr_state(bits)
        assert list(lfsr_keystream(rebuilt, 200)[0].digits) == bits

    def test_report_headline(self):
        data = berlekamp_massey_report("0101010101").to_dict()
        assert data["L"] == 2
        assert data["taps"] == [2]
        assert data["status"] == "ok"

    def test_empty_rejected(self):
        with pytest.raises(AnalysisError):
            berlekamp_massey("")


class TestReplayDetection:
    """Test suite for duplicate-frame flags."""

    def test_duplicates_flagged_once_each(self):
        frames = [(0, frame_digest(b"a")), (1, frame_digest(b"b")), (0, frame_digest(b"a")),
                  (2, frame_digest(b"c")), (1, frame_digest(b"b"))]
        flags = detect_replay(frames)
        assert [f.index for f in flags] == [2, 4]
        assert all(f.reason == ReplayReason.DUPLICATE for f in flags)
        assert flags[0].first_seen == 0

    def test_sequence_reuse_with_new_payload(self):
        flags = detect_replay([(0, frame_digest(b"a")), (0, frame_digest(b"z"))])
        assert [(f.index, f.reason) for f in flags] == [(1, ReplayReason.SEQ_REUSE)]

    def test_clean_log(self):
        assert detect_replay([(i, frame_digest(bytes([i]))) for i in range(5)]) == []

    def test_report(self):
        report = replay_report([(0, "d0"), (0, "d0")])
        assert report.to_dict()["flagged"] == [1]

    def test_wordlist_from_corpus(self):
        words = english_wordlist()
        assert "the" in words
        assert "el" not in words
