#!/usr/bin/env python3
"""Reference computation of the fixture project's monthly metrics table.

Recomputes, from first principles, every monthly component for the
fixture/alpha history: the hand-written GitHub records in fixture_data.hpp
plus the scripted git repository in fixture_repo.hpp (whose mined per-commit
fields are pinned in that header's expected_commits table). Writes the result
to tests/data/monthly_golden.csv; the production aggregation pipeline must
reproduce that file byte for byte.

Run from anywhere:  python3 tests/support/compute_golden_monthly.py
"""

import math
import os
from datetime import datetime, timezone

# ---------------------------------------------------------------------------
# Column registry (must match the production component order).
# ---------------------------------------------------------------------------

REGISTRY = [
    "issues_created", "issues_closed", "issue_closure_duration",
    "useful_issue_comment_ratio", "toxic_issue_comment_ratio",
    "prs_created", "prs_closed", "pr_closure_duration",
    "useful_review_comment_ratio", "toxic_review_comment_ratio",
    "commits_total", "commit_authors",
    "dmm_unit_interfacing", "dmm_unit_complexity", "dmm_unit_size",
    "issue_reporters", "issue_comments", "issue_response_time",
    "pr_creators", "review_comments", "pr_response_time",
    "issue_labels_new", "issue_labels_total", "pr_labels_new", "pr_labels_total",
    "newcomer_issues", "deduplicated_issues",
    "issue_comment_sentiment_median", "review_comment_sentiment_median",
    "issue_comment_readability", "issue_body_readability",
    "pr_comment_readability", "pr_body_readability",
    "reactions_issues", "reactions_issue_comments", "reactions_review_comments",
    "affiliation_heterogeneity_commits", "parent_commits",
    "gender_ratio_issues", "location_coverage_issues",
    "gender_ratio_prs", "location_coverage_prs",
    "association_heterogeneity_issues", "user_type_variation_issues",
    "association_heterogeneity_prs", "user_type_variation_prs",
    "prs_merged", "closed_open_issue_ratio",
]

SLUG = "fixture/alpha"

# ---------------------------------------------------------------------------
# Fixture records (transcribed from fixture_data.hpp).
# Issues/pulls: (number, author, association, created, closed, merged, labels,
# reactions, body).  Comments: (id, kind, parent, author, created, body,
# reactions).
# ---------------------------------------------------------------------------

ISSUES = [
    (1, "alice", "MEMBER", "2021-03-01T10:00:00Z", "2021-03-03T10:00:00Z",
     ["bug"], {"+1": 2}, "Crash when loading config."),
    (2, "bob", "NONE", "2021-03-02T00:00:00Z", "2021-04-01T00:00:00Z",
     ["good first issue"], {}, "The cat sat."),
    (3, "carol", "CONTRIBUTOR", "2021-03-05T12:00:00Z", None,
     ["help-wanted"], {"heart": 1}, ""),
    (4, "alice", "MEMBER", "2021-03-10T00:00:00Z", "2021-03-10T04:00:00Z",
     ["duplicate"], {}, "Duplicate of earlier report."),
    (5, "dave", "NONE", "2021-03-20T08:00:00Z", None, [], {},
     "Numbers drift after resume."),
    (6, "erin", "COLLABORATOR", "2021-04-03T00:00:00Z", "2021-05-01T00:00:00Z",
     ["bug"], {"+1": 1, "laugh": 1}, "Build fails on alpine."),
    (7, "bob", "NONE", "2021-04-10T06:00:00Z", None, ["Help Wanted"], {},
     "Docs missing for the export step."),
    (8, "frank", "FIRST_TIME_CONTRIBUTOR", "2021-04-15T00:00:00Z",
     "2021-04-16T00:00:00Z", [], {}, "Wrong units in the report."),
    (9, "grace", "NONE", "2021-05-02T00:00:00Z", None,
     ["good-first-issue", "bug"], {}, "Colors unreadable in dark mode."),
    (10, "pat", "NONE", "2021-05-20T00:00:00Z", "2021-05-20T00:30:00Z",
     [], {"-1": 1}, "Typo in README."),
]

PULLS = [
    (11, "carol", "CONTRIBUTOR", "2021-03-04T00:00:00Z", "2021-03-06T00:00:00Z",
     "2021-03-06T00:00:00Z", ["enhancement"], {"+1": 1}, "Adds config validation."),
    (12, "heidi-bot", "NONE", "2021-03-15T00:00:00Z", "2021-03-15T12:00:00Z",
     None, [], {}, "Automated dependency bump."),
    (13, "erin", "COLLABORATOR", "2021-04-05T00:00:00Z", None, None,
     ["enhancement"], {"rocket": 2}, "Refactors the export pipeline for clarity."),
    (14, "frank", "FIRST_TIME_CONTRIBUTOR", "2021-04-20T00:00:00Z",
     "2021-05-02T00:00:00Z", "2021-05-02T00:00:00Z", [], {},
     "Fixes the unit mismatch."),
    (15, "alice", "MEMBER", "2021-05-10T00:00:00Z", "2021-05-11T00:00:00Z",
     None, ["docs"], {"heart": 1}, "Rewrites the README quick start."),
]

COMMENTS = [
    (101, "issue", 1, "bob", "2021-03-01T11:00:00Z", "Thanks, great report!", {"+1": 1}),
    (102, "issue", 1, "alice", "2021-03-01T12:00:00Z", "Fixed in `abc123`.", {}),
    (103, "issue", 2, "alice", "2021-03-02T06:00:00Z", "Check the config docs first.", {}),
    (111, "pull", 11, "alice", "2021-03-04T01:00:00Z", "LGTM, thanks!", {"+1": 1}),
    (115, "review", 11, "bob", "2021-03-04T02:00:00Z",
     "Rename `check_cfg` to `validate_config`.", {}),
    (116, "review", 11, "carol", "2021-03-04T03:00:00Z", "Done.", {}),
    (104, "issue", 3, "dave", "2021-03-05T18:00:00Z", "This is broken and ugly.", {}),
    (105, "issue", 4, "bob", "2021-03-11T00:00:00Z", "Use the search before filing.",
     {"laugh": 1}),
    (112, "pull", 12, "bob", "2021-03-15T06:00:00Z", "Automated noise, closing.", {}),
    (109, "issue", 5, "dave", "2021-03-21T00:00:00Z", "Still happens after the patch.", {}),
    (106, "issue", 6, "alice", "2021-04-03T02:00:00Z",
     "Damn, the alpine image strikes again.", {}),
    (117, "review", 13, "frank", "2021-04-05T02:00:00Z",
     "Split this function, it is slow.", {}),
    (113, "pull", 13, "alice", "2021-04-05T04:00:00Z", "Works great on my machine.", {}),
    (107, "issue", 7, "carol", "2021-04-12T06:00:00Z", "Good catch, docs are stale.",
     {"heart": 2}),
    (118, "review", 14, "alice", "2021-04-21T00:00:00Z",
     "This loop is stupid slow, fix it.", {}),
    (119, "review", 14, "erin", "2021-04-22T00:00:00Z",
     "Move the parser into `core/parse.py`.", {"heart": 1}),
    (108, "issue", 9, "alice", "2021-05-02T12:00:00Z", "Nice idea.", {}),
    (114, "pull", 15, "bob", "2021-05-10T02:00:00Z", "Perfect, much clearer now.", {"+1": 2}),
    (120, "review", 15, "dave", "2021-05-11T00:00:00Z", "This sucks, slow and broken.", {}),
    (110, "issue", 10, "grace", "2021-05-20T00:10:00Z", "Merged, thanks.", {}),
]

# login -> (display_name, location, account_type)
PROFILES = {
    "alice": ("Alice Smith", "Berlin, Germany", "User"),
    "bob": ("Bob Jones", "Knoxville, TN", "User"),
    "carol": ("Carol White", "Paris, France", "User"),
    "dave": ("Dave Brown", None, "User"),
    "erin": ("Erin Green", "Tokyo, Japan", "User"),
    "frank": (None, "London", "User"),
    "grace": ("Grace Lee", "Zurich", "User"),
    "heidi-bot": ("Heidi Bot", None, "Bot"),
    "pat": ("Pat Quinn", None, "User"),
}

# Mined commit fields (email, authored_at, parent_count, dmm triple or None),
# in authored order; transcribed from fixture_repo.hpp's expected table.
COMMITS = [
    ("alice@acme.io", "2021-03-02T09:00:00Z", 0, None),
    ("alice@acme.io", "2021-03-03T09:00:00Z", 1, (1.0, 1.0, 1.0)),
    ("bob@gmail.com", "2021-03-08T09:00:00Z", 1, (0.0, 0.0, 0.0)),
    ("bob@gmail.com", "2021-03-12T09:00:00Z", 1, (1.0, 1.0, 1.0)),
    ("carol@lab.example.edu", "2021-03-18T09:00:00Z", 1, (1.0, 1.0, 1.0)),
    ("alice@acme.io", "2021-03-25T09:00:00Z", 1, None),
    ("dave@acme.io", "2021-04-02T09:00:00Z", 1, (0.0, 0.0, 0.0)),
    ("dave@acme.io", "2021-04-06T09:00:00Z", 1, (1.0, 1.0, 1.0)),
    ("12345+erin@users.noreply.github.com", "2021-04-10T09:00:00Z", 1, (1.0, 1.0, 1.0)),
    ("alice@acme.io", "2021-04-15T09:00:00Z", 2, None),
    ("alice@acme.io", "2021-04-20T09:00:00Z", 1, (1.0, 1.0, 1.0)),
    ("alice@acme.io", "2021-05-04T09:00:00Z", 1, (0.5, 0.5, 0.5)),
    ("bob@gmail.com", "2021-05-10T09:00:00Z", 1, None),
    ("alice@acme.io", "2021-05-16T09:00:00Z", 1, (1.0, 1.0, 1.0)),
    ("bob@gmail.com", "2021-05-22T09:00:00Z", 1, (1.0, 1.0, 0.0)),
]

# ---------------------------------------------------------------------------
# Lexicons (the subset of the bundled tables the fixture can touch, plus the
# full scoring word lists, which are small).
# ---------------------------------------------------------------------------

POSITIVE = {
    "amazing", "appreciate", "appreciated", "awesome", "clean", "cool", "correct",
    "elegant", "excellent", "fantastic", "fast", "fixed", "glad", "good", "great",
    "happy", "helpful", "lgtm", "love", "neat", "nice", "perfect", "pleased",
    "solid", "thank", "thanks", "useful", "wonderful", "works",
}
NEGATIVE = {
    "annoying", "awful", "bad", "broken", "bug", "confusing", "crash", "fail",
    "failed", "fails", "hate", "horrible", "leak", "messy", "regression", "sad",
    "slow", "terrible", "ugly", "unhappy", "useless", "worse", "worst", "wrong",
}
PROFANITY = {
    "ass", "asshole", "bastard", "bullshit", "crap", "damn", "dammit", "dumb",
    "fuck", "fucking", "idiot", "jerk", "moron", "shit", "stupid", "suck",
    "sucks", "wtf",
}
IMPERATIVES = {
    "add", "avoid", "change", "check", "consider", "delete", "document",
    "extract", "fix", "handle", "inline", "merge", "move", "refactor", "remove",
    "rename", "replace", "revert", "simplify", "split", "test", "try", "update",
    "use",
}
GENDER = {
    "alice": "female", "carol": "female", "erin": "female", "grace": "female",
    "heidi": "female", "bob": "male", "dave": "male", "frank": "male",
    "pat": "unknown",
}
COUNTRY = {
    "berlin": "Germany", "knoxville": "United States", "paris": "France",
    "tokyo": "Japan", "london": "United Kingdom", "zurich": "Switzerland",
}
GENERIC_PROVIDERS = {"gmail.com", "users.noreply.github.com"}

WHITESPACE = set(" \t\n\r\v\f")

# ---------------------------------------------------------------------------
# Text machinery (mirrors the production semantics exactly).
# ---------------------------------------------------------------------------


def is_fence_line(line):
    t = line.lstrip(" \t")
    return t.startswith("```") or t.startswith("~~~")


def drop_fenced_blocks(text):
    out = []
    in_fence = False
    for line in text.split("\n"):
        if is_fence_line(line):
            in_fence = not in_fence
        elif not in_fence:
            out.append(line)
    joined = "".join(l + "\n" for l in out)
    if joined.endswith("\n"):
        joined = joined[:-1]
    return joined


def drop_inline_code(text):
    out = []
    pos = 0
    while pos < len(text):
        if text[pos] == "`":
            close = text.find("`", pos + 1)
            if close != -1:
                pos = close + 1
                continue
        out.append(text[pos])
        pos += 1
    return "".join(out)


def drop_urls(text):
    out = []
    pos = 0
    while pos < len(text):
        if text.startswith("https://", pos) or text.startswith("http://", pos):
            while pos < len(text) and text[pos] not in WHITESPACE:
                pos += 1
            continue
        out.append(text[pos])
        pos += 1
    return "".join(out)


def strip_markup(text):
    return drop_urls(drop_inline_code(drop_fenced_blocks(text)))


def lower_alpha_tokens(text):
    tokens = []
    current = []
    for c in text:
        if c.isascii() and c.isalpha():
            current.append(c.lower())
        elif current:
            tokens.append("".join(current))
            current = []
    if current:
        tokens.append("".join(current))
    return tokens


def score_text(body):
    """Returns (sentiment, toxic, useful)."""
    if not body:
        return 0.0, False, False
    stripped = strip_markup(body)
    tokens = lower_alpha_tokens(stripped)
    total = 0.0
    matched = 0
    toxic = False
    for t in tokens:
        if t in POSITIVE:
            total += 1.0
            matched += 1
        elif t in NEGATIVE:
            total += -1.0
            matched += 1
        if t in PROFANITY:
            toxic = True
    sentiment = total / matched if matched else 0.0
    useful = references_code(body, stripped, tokens)
    return sentiment, toxic, useful


def references_code(raw, stripped, tokens):
    if "`" in raw:
        return True
    for word in split_whitespace(stripped):
        if len(word) > 1 and "/" in word:
            return True
    return bool(tokens) and tokens[0] in IMPERATIVES


def split_whitespace(text):
    words = []
    current = []
    for c in text:
        if c in WHITESPACE:
            if current:
                words.append("".join(current))
                current = []
        else:
            current.append(c)
    if current:
        words.append("".join(current))
    return words


def count_syllables(word):
    w = "".join(c.lower() for c in word if c.isascii() and c.isalpha())
    if not w:
        return 0
    vowels = set("aeiouy")
    groups = 0
    in_group = False
    for c in w:
        if c in vowels:
            if not in_group:
                groups += 1
            in_group = True
        else:
            in_group = False
    ends_le = len(w) >= 2 and w[-2] == "l" and w[-1] == "e"
    if w[-1] == "e" and not ends_le and len(w) > 2:
        groups -= 1
    return max(1, groups)


def flesch_reading_ease(body):
    text = strip_markup(body)
    words = 0
    syllables = 0
    sentences = 0
    words_in_segment = 0
    pos = 0
    while pos < len(text):
        c = text[pos]
        if c in ".!?":
            while pos < len(text) and text[pos] in ".!?":
                pos += 1
            if words_in_segment > 0:
                sentences += 1
            words_in_segment = 0
            continue
        if c in WHITESPACE:
            pos += 1
            continue
        end = pos
        has_alpha = False
        while end < len(text) and text[end] not in WHITESPACE and text[end] not in ".!?":
            if text[end].isascii() and text[end].isalpha():
                has_alpha = True
            end += 1
        if has_alpha:
            words += 1
            words_in_segment += 1
            syllables += count_syllables(text[pos:end])
        pos = end
    if words_in_segment > 0:
        sentences += 1
    if words == 0:
        return None
    if sentences == 0:
        sentences = 1
    w = float(words)
    s = float(sentences)
    syl = float(syllables)
    return 206.835 - 1.015 * (w / s) - 84.6 * (syl / w)


# ---------------------------------------------------------------------------
# Profile lookups.
# ---------------------------------------------------------------------------


def normalize_name(name):
    return "".join(c.lower() for c in name if c.isascii() and c.isalpha())


def gender_of(login):
    display, _, _ = PROFILES[login]
    if display is not None and display.strip():
        first = display.strip().split(" ")[0]
        key = normalize_name(first)
    else:
        key = normalize_name(login)
    return GENDER.get(key, "unknown")


def normalize_phrase(phrase):
    out = []
    pending_space = False
    for c in phrase:
        if c == ".":
            continue
        if (c.isascii() and c.isalnum()) or not c.isascii():
            if pending_space and out:
                out.append(" ")
            pending_space = False
            out.append(c.lower())
        else:
            pending_space = True
    return "".join(out)


def country_of(location_raw):
    def find(key):
        return COUNTRY.get(key) if key else None

    hit = find(normalize_phrase(location_raw))
    if hit:
        return hit
    for segment in location_raw.split(","):
        hit = find(normalize_phrase(segment))
        if hit:
            return hit
    for token in normalize_phrase(location_raw).split(" "):
        hit = find(token)
        if hit:
            return hit
    return None


def affiliation_of(email):
    at = email.rfind("@")
    if at == -1 or at + 1 >= len(email):
        return "unaffiliated"
    domain = email[at + 1:].strip().lower()
    if not domain or domain in GENERIC_PROVIDERS:
        return "unaffiliated"
    return domain


def commit_author_key(email):
    email = email.lower()
    suffix = "@users.noreply.github.com"
    if len(email) > len(suffix) and email.endswith(suffix):
        local = email[: -len(suffix)]
        if "+" in local:
            local = local.split("+", 1)[1]
        return local
    return email


# ---------------------------------------------------------------------------
# Shared numeric helpers (same operation order as production).
# ---------------------------------------------------------------------------


def parse_ts(iso):
    return int(datetime.fromisoformat(iso.replace("Z", "+00:00")).timestamp())


def month_ordinal(ts):
    d = datetime.fromtimestamp(ts, tz=timezone.utc)
    return d.year * 12 + (d.month - 1)


def month_label(ordinal):
    return "%04d-%02d" % (ordinal // 12, ordinal % 12 + 1)


def mean(values):
    acc = 0.0
    for v in values:
        acc += v
    return acc / float(len(values))


def median(values):
    v = sorted(values)
    n = len(v)
    if n % 2 == 1:
        return v[n // 2]
    return (v[n // 2 - 1] + v[n // 2]) / 2.0


def shannon(counts):
    total = 0
    for c in counts.values():
        total += c
    h = 0.0
    for name in sorted(counts):
        p = float(counts[name]) / float(total)
        h -= p * math.log(p)
    return 0.0 if h == 0.0 else h


def normalize_label(label):
    return "".join(c.lower() for c in label if c.isascii() and c.isalnum())


def fmt(value):
    if value == int(value):
        return str(int(value))
    return repr(value)


# ---------------------------------------------------------------------------
# Aggregation.
# ---------------------------------------------------------------------------


def main():
    issues = [
        {
            "number": n, "author": a, "assoc": assoc,
            "created": parse_ts(created),
            "closed": parse_ts(closed) if closed else None,
            "labels": labels, "reactions": reactions, "body": body,
        }
        for (n, a, assoc, created, closed, labels, reactions, body) in ISSUES
    ]
    pulls = [
        {
            "number": n, "author": a, "assoc": assoc,
            "created": parse_ts(created),
            "closed": parse_ts(closed) if closed else None,
            "merged": parse_ts(merged) if merged else None,
            "labels": labels, "reactions": reactions, "body": body,
        }
        for (n, a, assoc, created, closed, merged, labels, reactions, body) in PULLS
    ]
    comments = [
        {
            "id": cid, "kind": kind, "parent": parent, "author": a,
            "created": parse_ts(created), "body": body, "reactions": reactions,
        }
        for (cid, kind, parent, a, created, body, reactions) in COMMENTS
    ]
    commits = [
        {
            "email": email, "authored": parse_ts(at), "parents": parents,
            "dmm": dmm,
        }
        for (email, at, parents, dmm) in COMMITS
    ]

    # Month span.
    ordinals = []
    for r in issues:
        ordinals.append(month_ordinal(r["created"]))
        if r["closed"] is not None:
            ordinals.append(month_ordinal(r["closed"]))
    for r in pulls:
        ordinals.append(month_ordinal(r["created"]))
        if r["closed"] is not None:
            ordinals.append(month_ordinal(r["closed"]))
        if r["merged"] is not None:
            ordinals.append(month_ordinal(r["merged"]))
    for c in comments:
        ordinals.append(month_ordinal(c["created"]))
    for c in commits:
        ordinals.append(month_ordinal(c["authored"]))
    base, top = min(ordinals), max(ordinals)
    n_months = top - base + 1

    def blank_month():
        return {
            "issues_created": 0, "issues_closed": 0, "prs_created": 0,
            "prs_closed": 0, "prs_merged": 0, "conv_comments": 0,
            "review_comments": 0, "commits_total": 0,
            "issue_reporters": set(), "pr_creators": set(), "commit_authors": set(),
            "issue_labels_total": 0, "pr_labels_total": 0,
            "issue_labels_new": 0, "pr_labels_new": 0,
            "newcomer_issues": 0, "deduplicated_issues": 0,
            "reactions_issues": 0, "reactions_conv": 0, "reactions_review": 0,
            "parent_commits": 0,
            "issue_closure": [], "pr_closure": [], "issue_resp": [], "pr_resp": [],
            "dmm_size": [], "dmm_complexity": [], "dmm_interfacing": [],
            "conv_list": [], "review_list": [],
            "issue_comment_read": [], "pr_comment_read": [],
            "issue_body_read": [], "pr_body_read": [],
            "affiliation": {}, "assoc_issues": {}, "assoc_prs": {},
            "type_issues": {}, "type_prs": {},
            "issue_creators": [], "pr_creators_list": [],
        }

    acc = [blank_month() for _ in range(n_months)]

    def bucket(ts):
        return acc[month_ordinal(ts) - base]

    # Comments grouped under their parent for response times.
    by_parent = {}
    for c in comments:
        key = (c["kind"] != "issue", c["parent"])
        by_parent.setdefault(key, []).append(c)
    for key in by_parent:
        by_parent[key].sort(key=lambda c: (c["created"], c["id"]))

    def response_time(author, created, key):
        for c in by_parent.get(key, []):
            if c["author"] == author:
                continue
            delta = float(c["created"] - created)
            return max(delta, 0.0)
        return None

    # First month each (normalized) label appears on a newly created artifact.
    issue_label_first = {}
    pr_label_first = {}
    for r in issues:
        for label in r["labels"]:
            norm = normalize_label(label)
            if norm:
                ordv = month_ordinal(r["created"])
                prev = issue_label_first.get(norm)
                issue_label_first[norm] = ordv if prev is None else min(prev, ordv)
    for r in pulls:
        for label in r["labels"]:
            norm = normalize_label(label)
            if norm:
                ordv = month_ordinal(r["created"])
                prev = pr_label_first.get(norm)
                pr_label_first[norm] = ordv if prev is None else min(prev, ordv)
    for ordv in issue_label_first.values():
        acc[ordv - base]["issue_labels_new"] += 1
    for ordv in pr_label_first.values():
        acc[ordv - base]["pr_labels_new"] += 1

    def bump(counter, key):
        counter[key] = counter.get(key, 0) + 1

    for r in issues:
        m = bucket(r["created"])
        m["issues_created"] += 1
        m["issue_reporters"].add(r["author"])
        m["reactions_issues"] += sum(r["reactions"].values())
        newcomer = False
        duplicate = False
        for label in r["labels"]:
            norm = normalize_label(label)
            if not norm:
                continue
            m["issue_labels_total"] += 1
            newcomer = newcomer or norm in ("goodfirstissue", "helpwanted")
            duplicate = duplicate or norm == "duplicate"
        if newcomer:
            m["newcomer_issues"] += 1
        if duplicate:
            m["deduplicated_issues"] += 1
        bump(m["assoc_issues"], r["assoc"])
        if r["author"] in PROFILES:
            bump(m["type_issues"], PROFILES[r["author"]][2])
            m["issue_creators"].append(r["author"])
        readability = flesch_reading_ease(r["body"])
        if readability is not None:
            m["issue_body_read"].append(readability)
        if r["closed"] is not None:
            closed_m = bucket(r["closed"])
            closed_m["issues_closed"] += 1
            closed_m["issue_closure"].append(max(float(r["closed"] - r["created"]), 0.0))
        rt = response_time(r["author"], r["created"], (False, r["number"]))
        if rt is not None:
            m["issue_resp"].append(rt)

    for r in pulls:
        m = bucket(r["created"])
        m["prs_created"] += 1
        m["pr_creators"].add(r["author"])
        for label in r["labels"]:
            if normalize_label(label):
                m["pr_labels_total"] += 1
        bump(m["assoc_prs"], r["assoc"])
        if r["author"] in PROFILES:
            bump(m["type_prs"], PROFILES[r["author"]][2])
            m["pr_creators_list"].append(r["author"])
        readability = flesch_reading_ease(r["body"])
        if readability is not None:
            m["pr_body_read"].append(readability)
        if r["closed"] is not None:
            closed_m = bucket(r["closed"])
            closed_m["prs_closed"] += 1
            closed_m["pr_closure"].append(max(float(r["closed"] - r["created"]), 0.0))
        if r["merged"] is not None:
            bucket(r["merged"])["prs_merged"] += 1
        rt = response_time(r["author"], r["created"], (True, r["number"]))
        if rt is not None:
            m["pr_resp"].append(rt)

    for c in comments:
        m = bucket(c["created"])
        if c["kind"] == "review":
            m["review_comments"] += 1
            m["reactions_review"] += sum(c["reactions"].values())
            m["review_list"].append(c)
        else:
            m["conv_comments"] += 1
            m["reactions_conv"] += sum(c["reactions"].values())
            m["conv_list"].append(c)
        readability = flesch_reading_ease(c["body"])
        if readability is not None:
            if c["kind"] == "issue":
                m["issue_comment_read"].append(readability)
            else:
                m["pr_comment_read"].append(readability)

    for c in commits:
        m = bucket(c["authored"])
        m["commits_total"] += 1
        m["commit_authors"].add(commit_author_key(c["email"]))
        m["parent_commits"] += max(c["parents"] - 1, 0)
        bump(m["affiliation"], affiliation_of(c["email"]))
        if c["dmm"] is not None:
            size, complexity, interfacing = c["dmm"]
            m["dmm_size"].append(size)
            m["dmm_complexity"].append(complexity)
            m["dmm_interfacing"].append(interfacing)

    # Comment scoring, per month: conversation comments then review comments.
    text = []
    for m in acc:
        agg = {
            "conv_useful": 0, "conv_toxic": 0, "review_useful": 0,
            "review_toxic": 0, "conv_sentiment": [], "review_sentiment": [],
        }
        for c in m["conv_list"]:
            sentiment, toxic, useful = score_text(c["body"])
            agg["conv_useful"] += 1 if useful else 0
            agg["conv_toxic"] += 1 if toxic else 0
            agg["conv_sentiment"].append(sentiment)
        for c in m["review_list"]:
            sentiment, toxic, useful = score_text(c["body"])
            agg["review_useful"] += 1 if useful else 0
            agg["review_toxic"] += 1 if toxic else 0
            agg["review_sentiment"].append(sentiment)
        text.append(agg)

    def gender_ratio(logins):
        seen = set()
        female = 0
        male = 0
        for login in logins:
            if login in seen:
                continue
            seen.add(login)
            g = gender_of(login)
            if g == "female":
                female += 1
            elif g == "male":
                male += 1
        if female + male == 0:
            return None
        return float(female) / float(female + male)

    def location_coverage(logins):
        seen = set()
        countries = set()
        for login in logins:
            if login in seen:
                continue
            seen.add(login)
            location = PROFILES[login][1]
            if location is None:
                continue
            country = country_of(location)
            if country is not None:
                countries.add(country)
        return len(countries)

    rows = []
    for i in range(n_months):
        m = acc[i]
        t = text[i]
        values = {}

        def set_v(key, value):
            values[key] = float(value)

        def set_mean(key, vec):
            if vec:
                set_v(key, mean(vec))

        def set_shannon(key, counts):
            if counts:
                set_v(key, shannon(counts))

        set_v("issues_created", m["issues_created"])
        set_v("issues_closed", m["issues_closed"])
        set_v("prs_created", m["prs_created"])
        set_v("prs_closed", m["prs_closed"])
        set_v("prs_merged", m["prs_merged"])
        set_v("issue_comments", m["conv_comments"])
        set_v("review_comments", m["review_comments"])
        set_v("commits_total", m["commits_total"])
        set_v("commit_authors", len(m["commit_authors"]))
        set_v("issue_reporters", len(m["issue_reporters"]))
        set_v("pr_creators", len(m["pr_creators"]))
        set_v("issue_labels_new", m["issue_labels_new"])
        set_v("issue_labels_total", m["issue_labels_total"])
        set_v("pr_labels_new", m["pr_labels_new"])
        set_v("pr_labels_total", m["pr_labels_total"])
        set_v("newcomer_issues", m["newcomer_issues"])
        set_v("deduplicated_issues", m["deduplicated_issues"])
        set_v("reactions_issues", m["reactions_issues"])
        set_v("reactions_issue_comments", m["reactions_conv"])
        set_v("reactions_review_comments", m["reactions_review"])
        set_v("parent_commits", m["parent_commits"])

        set_mean("issue_closure_duration", m["issue_closure"])
        set_mean("pr_closure_duration", m["pr_closure"])
        set_mean("issue_response_time", m["issue_resp"])
        set_mean("pr_response_time", m["pr_resp"])
        set_mean("dmm_unit_size", m["dmm_size"])
        set_mean("dmm_unit_complexity", m["dmm_complexity"])
        set_mean("dmm_unit_interfacing", m["dmm_interfacing"])

        if m["conv_comments"] > 0:
            total = float(m["conv_comments"])
            set_v("useful_issue_comment_ratio", float(t["conv_useful"]) / total)
            set_v("toxic_issue_comment_ratio", float(t["conv_toxic"]) / total)
            set_v("issue_comment_sentiment_median", median(t["conv_sentiment"]))
        if m["review_comments"] > 0:
            total = float(m["review_comments"])
            set_v("useful_review_comment_ratio", float(t["review_useful"]) / total)
            set_v("toxic_review_comment_ratio", float(t["review_toxic"]) / total)
            set_v("review_comment_sentiment_median", median(t["review_sentiment"]))

        set_mean("issue_comment_readability", m["issue_comment_read"])
        set_mean("issue_body_readability", m["issue_body_read"])
        set_mean("pr_comment_readability", m["pr_comment_read"])
        set_mean("pr_body_readability", m["pr_body_read"])

        set_shannon("affiliation_heterogeneity_commits", m["affiliation"])
        set_shannon("association_heterogeneity_issues", m["assoc_issues"])
        set_shannon("association_heterogeneity_prs", m["assoc_prs"])
        set_shannon("user_type_variation_issues", m["type_issues"])
        set_shannon("user_type_variation_prs", m["type_prs"])

        ratio = gender_ratio(m["issue_creators"])
        if ratio is not None:
            set_v("gender_ratio_issues", ratio)
        ratio = gender_ratio(m["pr_creators_list"])
        if ratio is not None:
            set_v("gender_ratio_prs", ratio)
        set_v("location_coverage_issues", location_coverage(m["issue_creators"]))
        set_v("location_coverage_prs", location_coverage(m["pr_creators_list"]))

        if m["issues_created"] > 0:
            set_v("closed_open_issue_ratio",
                  float(m["issues_closed"]) / float(m["issues_created"]))

        rows.append((month_label(base + i), values))

    lines = ["repo,month" + "".join("," + c for c in REGISTRY)]
    for label, values in rows:
        cells = [SLUG, label]
        for component in REGISTRY:
            cells.append(fmt(values[component]) if component in values else "")
        lines.append(",".join(cells))
    csv_text = "\n".join(lines) + "\n"

    out_dir = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "data")
    os.makedirs(out_dir, exist_ok=True)
    out_path = os.path.normpath(os.path.join(out_dir, "monthly_golden.csv"))
    with open(out_path, "w", encoding="utf-8") as fh:
        fh.write(csv_text)
    print("wrote %s (%d rows)" % (out_path, len(rows)))
    for label, values in rows:
        for key in ("issue_closure_duration", "issue_response_time",
                    "useful_issue_comment_ratio", "dmm_unit_size",
                    "association_heterogeneity_issues", "gender_ratio_issues"):
            print("  %s %s = %s" % (label, key, fmt(values[key]) if key in values else "(absent)"))


if __name__ == "__main__":
    main()
