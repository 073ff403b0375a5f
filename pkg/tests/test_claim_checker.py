import random

import pytest

from analyzer.claim_checker import FactCheckReport, Verdict, check, diff_claims
from core.claims import CollectionClaim, Provenance
from core.errors import InvalidClaim, ProvenanceError
from core.vocabulary import CollectionMeans, InteractionDataType

T = InteractionDataType
M = CollectionMeans
AP, BIN, CAT, UI, G, CG = (
    T.APP_PRESENTATION, T.BINARY, T.CATEGORICAL, T.USER_INPUT, T.GESTURE, T.COMPOSITE_GESTURE,
)
F, D, MO = M.FREQUENCY, M.DURATION, M.MOTION_DETAILS


def evidence(types, means):
    return CollectionClaim(types, means, Provenance.EVIDENCE_DERIVED, ("app/0",))


def policy(types, means):
    return CollectionClaim(types, means, Provenance.POLICY_DERIVED, ("p#0",))


# 실제 앱 10개의 (증거, 정책) 클레임. 정책 None = 모호한 문장만 있음
POPULAR_APPS = {
    "TikTok": ((set(T), set(M)), ({AP, BIN, UI, G, CG}, {F, D})),
    "SHEIN": (({AP, BIN, CAT, UI}, {F, D}), ({AP, BIN, CAT}, set())),
    "Booking": (({AP, BIN, CAT, UI}, {F, D}), None),
    "PayPal": (({AP, BIN, CAT, UI}, {F}), ({AP}, set())),
    "Duolingo": (({AP, BIN, CAT, UI, G}, {F, D}), ({AP, BIN, CAT, UI, G}, {D})),
    "Amazon": (({AP, BIN, CAT, UI, G}, {F, D, MO}), ({AP, BIN, CAT, UI}, set())),
    "Yazio": (({BIN, UI}, {F}), ({BIN}, set())),
    "Fashion Famous": (({AP, BIN, UI, G, CG}, {F, D, MO}), None),
    "Picsart": (({AP, BIN, G, CG}, {F, D, MO}), None),
    "Dezor": (({AP, BIN, CAT, UI}, {F}), ({AP, BIN}, set())),
}


# 앱별 미공개 (타입, 수단). 과잉 주장은 모든 앱에서 없음
UNDISCLOSED = {
    "TikTok": ({CAT}, {MO}),
    "SHEIN": ({UI}, {F, D}),
    "Booking": ({AP, BIN, CAT, UI}, {F, D}),
    "PayPal": ({BIN, CAT, UI}, {F}),
    "Duolingo": (set(), {F}),
    "Amazon": ({G}, {F, D, MO}),
    "Yazio": ({UI}, {F}),
    "Fashion Famous": ({AP, BIN, UI, G, CG}, {F, D, MO}),
    "Picsart": ({AP, BIN, G, CG}, {F, D, MO}),
    "Dezor": ({CAT, UI}, {F}),
}


@pytest.mark.parametrize("name", sorted(POPULAR_APPS))
def test_popular_apps_are_incomplete(name):
    (ev_types, ev_means), pol = POPULAR_APPS[name]
    report = check(policy(*pol) if pol else None, evidence(ev_types, ev_means), app_name=name)
    assert report.verdict is Verdict.INCOMPLETE
    assert report.has_undisclosed
    assert report.policy_vague_only == (pol is None)
    assert (report.undisclosed_types, report.undisclosed_means) == UNDISCLOSED[name]
    assert report.overclaimed_types == frozenset()
    assert report.overclaimed_means == frozenset()


def test_all_verdicts():
    ev = evidence({BIN}, {F})
    assert check(policy({BIN}, {F}), ev).verdict is Verdict.COMPLETE
    assert check(policy({BIN, G}, {F}), ev).verdict is Verdict.OVERCLAIMED
    assert check(policy({G}, {D}), ev).verdict is Verdict.MIXED
    assert check(policy({BIN}, set()), ev).verdict is Verdict.INCOMPLETE
    assert Verdict.OVERCLAIMED.is_disclosure_complete
    assert not Verdict.MIXED.is_disclosure_complete


def test_checked_standardized_policy_is_accepted():
    claim = CollectionClaim({BIN}, {F}, Provenance.CHECKED_STANDARDIZED)
    assert check(claim, evidence({BIN}, {F})).verdict is Verdict.COMPLETE


def test_provenance_is_enforced():
    with pytest.raises(ProvenanceError):
        check(evidence({BIN}, {F}), evidence({BIN}, {F}))
    with pytest.raises(ProvenanceError):
        check(policy({BIN}, {F}), policy({BIN}, {F}))


def test_citations_follow_policy_sources():
    pol = CollectionClaim({AP}, {F}, Provenance.POLICY_DERIVED, ("yr#1", "yr#2"))
    report = check(pol, evidence({AP}, {F}), citations={"yr#2": "b", "yr#1": "a", "yr#9": "z"})
    assert report.citations == {"yr#1": "a", "yr#2": "b"}


def _random_claim(rng, maker):
    while True:
        types = {t for t in T if rng.random() < 0.5}
        means = {m for m in M if rng.random() < 0.5}
        if types or means:
            return maker(types, means)


def test_random_pairs_agree_with_set_algebra():
    rng = random.Random(2024)
    for _ in range(10_000):
        ev = _random_claim(rng, evidence)
        pol = _random_claim(rng, policy) if rng.random() < 0.9 else None
        report = check(pol, ev)

        pol_types = pol.data_types if pol else frozenset()
        pol_means = pol.means if pol else frozenset()
        assert report.undisclosed_types == ev.data_types - pol_types
        assert report.undisclosed_means == ev.means - pol_means
        assert report.overclaimed_types == pol_types - ev.data_types
        assert report.overclaimed_means == pol_means - ev.means

        undisclosed = bool(report.undisclosed_types or report.undisclosed_means)
        overclaimed = bool(report.overclaimed_types or report.overclaimed_means)
        expected = {
            (False, False): Verdict.COMPLETE,
            (True, False): Verdict.INCOMPLETE,
            (False, True): Verdict.OVERCLAIMED,
            (True, True): Verdict.MIXED,
        }[(undisclosed, overclaimed)]
        assert report.verdict is expected
        if pol is not None and ev.data_types <= pol.data_types and ev.means <= pol.means:
            assert report.verdict.is_disclosure_complete


def test_diff_is_antisymmetric():
    rng = random.Random(5)
    for _ in range(500):
        a = _random_claim(rng, evidence)
        b = _random_claim(rng, policy)
        ab, ba = diff_claims(a, b), diff_claims(b, a)
        assert (ab.only_a_types, ab.only_a_means) == (ba.only_b_types, ba.only_b_means)
        assert (ab.only_b_types, ab.only_b_means) == (ba.only_a_types, ba.only_a_means)


def test_report_json_round_trip():
    pol = CollectionClaim({AP}, {F}, Provenance.POLICY_DERIVED, ("yr#1",))
    report = check(pol, evidence({AP, BIN}, {F, D}), citations={"yr#1": "We track usage."}, app_name="yr")
    data = report.to_dict()
    assert data["undisclosed_types"] == ["binary"]
    assert data["undisclosed_means"] == ["duration"]
    assert data["verdict"] == "Incomplete"
    assert FactCheckReport.from_dict(data) == report

    vague = check(None, evidence({BIN}, {F}))
    assert FactCheckReport.from_dict(vague.to_dict()) == vague


@pytest.mark.parametrize("mutate", [
    lambda d: d.update(report_version=99),
    lambda d: d.pop("evidence_claim"),
    lambda d: d.update(verdict="Perfect"),
    lambda d: d.update(undisclosed_types=["telepathy"]),
])
def test_report_from_bad_json(mutate):
    data = check(None, evidence({BIN}, {F})).to_dict()
    mutate(data)
    with pytest.raises(InvalidClaim):
        FactCheckReport.from_dict(data)
