"""
Integration Tests for the Channel Simulator

Profiles, session determinism, key-collision behaviour of each key
policy, replay injection, the eavesdropper and the evaluation harness.
"""

import json

import pytest

from cipherlab.channel import (
    ChannelProfile,
    KeyPolicy,
    Trace,
    eavesdrop_and_attack,
    evaluate_nl_layer,
    get_profile,
    group_by_key_material,
    inject_replays,
    keystream_cancels,
    load_profiles,
    mix_text,
    read_frames,
    run_session,
    run_trial,
    sample_text,
)
from cipherlab.channel.eavesdrop import AttackKind
from cipherlab.config import EvaluationSettings, HillClimbBudget
from cipherlab.cryptanalysis import corpus_sentences, detect_replay
from cipherlab.errors import ConfigError, CorpusTooSmallError, InvalidSpecError
from cipherlab.nl_layer import lexicon_load_file

# Every word is lexicon-covered or passes through, and every letter of the
# mixed text is in the bundled 11-pair character map's domain.
COVERED_MESSAGES = [
    "bob is a joker",
    "a river is in one rose",
    "sue is a joker in a river",
    "bob is one joker",
]


@pytest.fixture
def sentences():
    return corpus_sentences()[:40]


def fast_settings(**changes) -> EvaluationSettings:
    return EvaluationSettings(
        trials=10,
        sample_letters=300,
        budget=HillClimbBudget(restarts=1, stall_limit=200),
        **changes,
    )


@pytest.mark.integration
class TestProfiles:
    """Test suite for channel profile loading."""

    def test_bundled_profiles(self):
        profiles = load_profiles()
        assert {"fresh", "reused", "weak-wep", "spanglish-reused", "selfsync-noisy"} <= set(profiles)
        assert profiles["weak-wep"].key_policy == KeyPolicy.WEAK_WEP
        assert profiles["weak-wep"].effective_iv_space == 256 ** 3

    def test_weak_wep_uses_plain_rc4(self):
        assert get_profile("weak-wep").pipeline_config().generator.drop == 0

    def test_unknown_profile(self):
        with pytest.raises(ConfigError, match="weak-wep"):
            get_profile("no-such-profile")

    def test_iv_space_must_fit(self):
        with pytest.raises(InvalidSpecError):
            get_profile("weak-wep").with_overrides(iv_space=256 ** 3 + 1)

    def test_invalid_profile_file(self, tmp_path):
        path = tmp_path / "profiles.yml"
        path.write_text("profiles:\n  bad:\n    pipeline: pipeline_plain.json\n    corruption: 2\n", encoding="utf-8")
        with pytest.raises(ConfigError, match="bad"):
            load_profiles(path)


@pytest.mark.integration
class TestSession:
    """Test suite for run_session and its trace."""

    @pytest.mark.parametrize("name", ["fresh", "reused", "weak-wep", "spanglish-reused", "selfsync-noisy"])
    def test_receiver_recovers_every_message(self, name):
        profile = get_profile(name).with_overrides(corruption=0.0)
        trace = run_session(profile, COVERED_MESSAGES, rng_seed=3)
        assert all(entry.ok for entry in trace.received)
        assert [entry.text for entry in trace.received] == COVERED_MESSAGES
        assert trace.corrupted_bytes == 0

    def test_same_seed_same_trace(self, tmp_path):
        profile = get_profile("weak-wep")
        first, second = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
        run_session(profile, COVERED_MESSAGES, rng_seed=11).write_jsonl(first)
        run_session(profile, COVERED_MESSAGES, rng_seed=11).write_jsonl(second)
        assert first.read_bytes() == second.read_bytes()

    def test_different_seed_different_trace(self):
        profile = get_profile("fresh")
        a = run_session(profile, COVERED_MESSAGES, rng_seed=1)
        b = run_session(profile, COVERED_MESSAGES, rng_seed=2)
        assert [f.payload for f in a.frames] != [f.payload for f in b.frames]

    def test_key_policies(self):
        fresh = run_session(get_profile("fresh"), COVERED_MESSAGES, rng_seed=4)
        reused = run_session(get_profile("reused"), COVERED_MESSAGES, rng_seed=4)
        assert fresh.key_reuses == 0
        assert reused.key_reuses == len(COVERED_MESSAGES) - 1

    def test_small_iv_space_collides(self, sentences):
        """100 frames drawn from 16 IVs always repeat an IV."""
        profile = get_profile("weak-wep").with_overrides(iv_space=16)
        messages = [sentences[i % len(sentences)] for i in range(100)]
        trace = run_session(profile, messages, rng_seed=7)
        assert len({f.iv for f in trace.frames}) <= 16
        assert trace.key_reuses >= 1

    def test_corruption_is_counted(self, sentences):
        profile = get_profile("selfsync-noisy").with_overrides(corruption=0.2)
        trace = run_session(profile, sentences[:10], rng_seed=5)
        assert trace.corrupted_bytes > 0

    def test_trace_file_round_trip(self, tmp_path):
        trace = run_session(get_profile("weak-wep"), COVERED_MESSAGES, rng_seed=8)
        path = tmp_path / "trace.jsonl"
        trace.write_jsonl(path)
        assert tuple(read_frames(path)) == trace.frames

    def test_receiver_log(self, tmp_path):
        trace = run_session(get_profile("reused"), COVERED_MESSAGES, rng_seed=8)
        path = tmp_path / "receiver.json"
        trace.write_receiver_log(path)
        log = json.loads(path.read_text(encoding="utf-8"))
        assert log["profile"] == "reused"
        assert len(log["entries"]) == len(COVERED_MESSAGES)

    def test_bad_trace_line(self, tmp_path):
        path = tmp_path / "trace.jsonl"
        path.write_text('{"seq": 0, "payload": "zz"}\n', encoding="utf-8")
        with pytest.raises(ConfigError, match="line 1"):
            read_frames(path)

    def test_empty_session_rejected(self):
        with pytest.raises(ValueError):
            run_session(get_profile("fresh"), [], rng_seed=1)


@pytest.mark.integration
class TestReplays:
    """Test suite for replay injection and detection."""

    @pytest.mark.parametrize("k", [0, 1, 5])
    def test_detector_flags_exactly_the_injected(self, k):
        trace = run_session(get_profile("fresh"), COVERED_MESSAGES, rng_seed=2)
        replayed, injected = inject_replays(trace, k, rng_seed=9)
        assert len(replayed.frames) == len(trace.frames) + k
        flagged = [f.index for f in detect_replay(replayed.frame_ids())]
        assert flagged == injected

    def test_negative_k(self):
        trace = run_session(get_profile("fresh"), COVERED_MESSAGES, rng_seed=2)
        with pytest.raises(ValueError):
            inject_replays(trace, -1, rng_seed=1)


@pytest.mark.integration
class TestEavesdropper:
    """Test suite for key-material grouping and the attack suite."""

    def test_reused_keystream_cancels(self, sentences):
        trace = run_session(get_profile("reused"), sentences[:6], rng_seed=1)
        frames = [f for f in trace.frames if len(f.payload) >= 24]
        assert keystream_cancels(frames[0].payload, frames[1].payload)
        groups = group_by_key_material(trace.frames)
        assert len(groups) == 1

    def test_fresh_keys_do_not_cancel(self, sentences):
        trace = run_session(get_profile("fresh"), sentences[:6], rng_seed=1)
        assert group_by_key_material(trace.frames) == []

    def test_fresh_profile_reports_no_reuse(self, sentences):
        trace = run_session(get_profile("fresh"), sentences[:6], rng_seed=1)
        results = eavesdrop_and_attack(trace, [AttackKind.REUSE], rng_seed=1)
        assert results[0].reason == "no reuse"
        assert results[0].accuracy == 0.0

    def test_reused_profile_leaks(self, sentences, fast_budget):
        trace = run_session(get_profile("reused"), sentences[:10], rng_seed=1)
        results = {r.attack: r for r in eavesdrop_and_attack(trace, budget=fast_budget, rng_seed=1)}
        assert results["reuse"].accuracy > 0.0
        assert results["depth"].accuracy > 0.5
        assert results["replay"].reason == "no replays"

    def test_weak_wep_groups_by_iv(self, sentences):
        profile = get_profile("weak-wep").with_overrides(iv_space=2)
        trace = run_session(profile, sentences[:8], rng_seed=3)
        groups = group_by_key_material(trace.frames)
        assert groups
        for group in groups:
            assert len({f.iv for f in group}) == 1

    def test_replays_excluded_from_grouping(self):
        trace = run_session(get_profile("fresh"), COVERED_MESSAGES, rng_seed=2)
        replayed, _ = inject_replays(trace, 2, rng_seed=4)
        results = eavesdrop_and_attack(replayed, [AttackKind.REPLAY, AttackKind.REUSE], rng_seed=1)
        by_name = {r.attack: r for r in results}
        assert len(by_name["replay"].details["flagged"]) == 2
        assert by_name["reuse"].reason == "no reuse"

    def test_result_dict(self, sentences):
        trace = run_session(get_profile("fresh"), sentences[:3], rng_seed=1)
        data = eavesdrop_and_attack(trace, [AttackKind.REPLAY])[0].to_dict()
        assert set(data) >= {"profile", "attack", "accuracy", "dictionary_hit_rate", "frames_observed", "wall_time"}


class TestEvaluation:
    """Test suite for the plain-versus-mixed comparison."""

    def test_identity_arms_match(self, sentences):
        """Without a lexicon or map both arms see the same text and score alike."""
        report = evaluate_nl_layer(sentences, rng_seed=3, settings=fast_settings())
        assert report.plain.accuracies == report.mixed.accuracies
        assert report.difference["accuracy"] == 0.0
        assert report.lexicon_entries == 0

    def test_deterministic(self, sentences, data_dir):
        lexicon = lexicon_load_file(data_dir / "spanglish.json")
        first = evaluate_nl_layer(sentences, lexicon, rng_seed=4, settings=fast_settings())
        second = evaluate_nl_layer(sentences, lexicon, rng_seed=4, settings=fast_settings())
        assert first.to_dict()["per_trial"] == second.to_dict()["per_trial"]
        assert "--seed 4" in first.reproduce

    def test_parallel_matches_serial(self, sentences):
        serial = evaluate_nl_layer(sentences, rng_seed=5, settings=fast_settings(n_jobs=1))
        parallel = evaluate_nl_layer(sentences, rng_seed=5, settings=fast_settings(n_jobs=2))
        assert serial.per_trial == parallel.per_trial

    def test_corpus_too_small(self, sentences):
        with pytest.raises(CorpusTooSmallError):
            evaluate_nl_layer(sentences[:5], settings=fast_settings())

    def test_too_few_trials(self, sentences):
        with pytest.raises(CorpusTooSmallError):
            evaluate_nl_layer(sentences, trials=3, settings=fast_settings())

    def test_sample_and_mix(self, sentences, data_dir):
        import random

        text = sample_text(sentences, 300, random.Random(1))
        assert sum(1 for c in text if c.isalpha()) >= 300
        lexicon = lexicon_load_file(data_dir / "spanglish.json")
        assert mix_text("the river", lexicon, None) == "el rio"
        assert mix_text("the river", None, None) == "the river"

    def test_single_trial_is_pure(self, sentences):
        budget = HillClimbBudget(restarts=1, stall_limit=100)
        first = run_trial(0, sentences, None, None, 300, budget, seed=1)
        second = run_trial(0, sentences, None, None, 300, budget, seed=1)
        assert first == second

    @pytest.mark.slow
    def test_spanglish_lowers_dictionary_hits(self, data_dir):
        """Across 20 seeded runs the mixed arm has fewer dictionary hits in at least 18."""
        lexicon = lexicon_load_file(data_dir / "spanglish.json")
        settings = EvaluationSettings(n_jobs=-1)
        lowered = 0
        for seed in range(20):
            report = evaluate_nl_layer(corpus_sentences(), lexicon, rng_seed=seed, settings=settings)
            assert report.coverage >= 0.30
            if report.difference["dictionary_hit_rate"] > 0.0:
                lowered += 1
        assert lowered >= 18
