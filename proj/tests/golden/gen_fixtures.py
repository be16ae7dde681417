#!/usr/bin/env python3
"""Regenerates the bundled sample dump (posts.jsonl, comments.jsonl) and the
lexicon excerpt. Deterministic; rerun only when the fixture design changes,
then regenerate expected/ with the pipeline at --threads 1."""

import json
import random

rng = random.Random(20170501)

USERS = [
    "quasar_fan", "deep_skeptic", "tinfoil_tim", "labrat_lena", "astro_amy",
    "pattern_seer", "midnight_owl", "data_dana", "chem_chad", "nova_nate",
    "wary_walt", "peer_review", "orbit_otto", "helix_hana", "stat_sam",
    "echo_erin", "field_fox", "gamma_gil", "ion_iris", "joule_jan",
    "kelvin_kay", "lumen_lou", "meson_mia", "neuron_ned", "ozone_oz",
    "photon_pam", "quark_quinn", "radon_rai", "sigma_sol", "tesla_ted",
    "umbra_uma", "vector_vic", "watt_wes", "xenon_xia", "yield_yan",
]

CONSPIRACY_WORDS = [
    "government", "secret", "coverup", "chemtrails", "vaccine", "hoax",
    "truth", "hidden", "agenda", "illuminati", "leak", "documents",
    "whistleblower", "classified", "surveillance", "false", "flag",
    "shadow", "elite", "sheeple", "wake", "media", "narrative", "distraction",
]

SCIENCE_WORDS = [
    "study", "researchers", "climate", "data", "cells", "quantum", "species",
    "brain", "energy", "experiment", "physics", "genome", "neurons", "galaxy",
    "fossil", "sample", "peer", "review", "journal", "hypothesis", "control",
    "results", "telescope", "enzyme",
]

AFFECT_WORDS = [
    "fear", "panic", "trust", "evidence", "hope", "attack", "danger",
    "amazing", "disgusting", "horrible", "celebrate", "furious", "threat",
    "alarm", "disease", "cure", "proof", "lie", "expose", "shocking",
]

FILLER = [
    "the", "a", "of", "and", "to", "in", "is", "it", "that", "this", "was",
    "are", "on", "for", "with", "they", "we", "about", "just", "really",
    "new", "big", "old", "very", "more",
]

URLS = [
    "https://www.nytimes.com/2017/05/01/science/article.html",
    "http://cnn.com/story?id=12",
    "https://www.foxnews.com/politics/segment",
    "https://breitbart.com/national-security/report",
    "https://www.theguardian.com/uk-news/piece",
    "https://reuters.com/article/us-topic-idUSKBN",
    "https://twitter.com/user/status/1882",
    "https://m.youtube.com/watch?v=dQw4w",
    "https://i.imgur.com/xYz12.jpg",
    "https://news.google.com/topstories",
    "https://www.facebook.com/groups/42",
    "https://www.wsj.com/articles/markets",
    "https://news.antiwar.com/2017/04/11/",
    "https://original.antiwar.com/justin/",
    "https://www.reddit.com/r/conspiracy/comments/abc",
    "https://redd.it/5xk2p",
    "",
    "self.conspiracy",
    "https://unexplained-mysteries.com/forum/1",
    "https://sciencealert.com/study-finds",
    "https://phys.org/news/2017-03.html",
    "https://www.huffingtonpost.com/entry/piece",
    "https://salon.com/2017/08/opinion",
    "https://WWW.Telegraph.co.uk/News/Item",
]


def sentence(pool, n):
    words = []
    for _ in range(n):
        r = rng.random()
        if r < 0.45:
            words.append(rng.choice(pool))
        elif r < 0.65:
            words.append(rng.choice(AFFECT_WORDS))
        else:
            words.append(rng.choice(FILLER))
    return " ".join(words)


def make_posts():
    posts = []
    base = 1484000000  # mid-January 2017
    for i in range(48):
        comm = "conspiracy" if i % 2 == 0 else "science"
        pool = CONSPIRACY_WORDS if comm == "conspiracy" else SCIENCE_WORDS
        created = base + i * 1280000 + rng.randrange(0, 86400)  # spans ~2 years
        post = {
            "id": f"t3_p{i:03d}",
            "author": rng.choice(USERS),
            "subreddit": comm,
            "created_utc": created,
            "title": sentence(pool, rng.randrange(4, 9)).capitalize(),
            "selftext": sentence(pool, rng.randrange(0, 18)),
            "url": URLS[i % len(URLS)],
        }
        if i % 11 == 3:
            post["author"] = "[deleted]"
        posts.append(post)
    return posts


def make_comments(posts):
    comments = []
    cid = 0
    budget = 252  # lands the accepted event count near 300
    for i, post in enumerate(posts):
        comm = post["subreddit"]
        pool = CONSPIRACY_WORDS if comm == "conspiracy" else SCIENCE_WORDS
        n = rng.choice([0, 1, 2, 2, 3, 3, 4, 5, 6, 7, 9, 11])
        if i == 7:
            n = 18  # one big thread for the network
        n = min(n, budget - cid)
        nodes = [post["id"]]  # full ids; link/parent keep the t-prefix form
        t = post["created_utc"]
        for _ in range(n):
            cid += 1
            t += rng.randrange(40, 14000)
            # bias replies toward the post itself, star-plus-chains texture
            parent = nodes[0] if rng.random() < 0.45 else rng.choice(nodes)
            author = rng.choice(USERS)
            if rng.random() < 0.08:
                author = "[deleted]"
            body = sentence(pool, rng.randrange(3, 16))
            if rng.random() < 0.12:
                body += " see " + rng.choice(URLS[:12])
            if rng.random() < 0.05:
                body += " café discussion"
            full = f"t1_c{cid:04d}"
            comments.append({
                "id": full,
                "author": author,
                "subreddit": comm,
                "created_utc": t,
                "parent_id": parent,
                "link_id": post["id"],
                "body": body,
            })
            nodes.append(full)
    return comments


def main():
    posts = make_posts()
    comments = make_comments(posts)

    # bot chatter, dropped at ingest
    for i in (0, 7, 12, 30):
        comments.append({
            "id": f"t1_bot{i:02d}",
            "author": "AutoModerator",
            "subreddit": posts[i]["subreddit"],
            "created_utc": posts[i]["created_utc"] + 5,
            "parent_id": posts[i]["id"],
            "link_id": posts[i]["id"],
            "body": "this is a reminder about the community rules",
        })

    # orphans: missing post, and a parent chain that goes nowhere
    comments.append({
        "id": "t1_orph01", "author": "wary_walt", "subreddit": "conspiracy",
        "created_utc": 1495000000, "parent_id": "t3_zzz999",
        "link_id": "t3_zzz999", "body": "whole thread got nuked",
    })
    comments.append({
        "id": "t1_orph02", "author": "echo_erin", "subreddit": "science",
        "created_utc": 1496000000, "parent_id": "t1_missing",
        "link_id": posts[1]["id"], "body": "replying to a ghost",
    })

    # duplicate id, first occurrence wins downstream
    dup = dict(comments[3])
    dup["body"] = "edited repost of the same comment"
    comments.append(dup)

    comments.sort(key=lambda c: (c["created_utc"], c["id"]))

    with open("posts.jsonl", "w") as f:
        for i, p in enumerate(posts):
            f.write(json.dumps(p, sort_keys=True) + "\n")
            if i == 20:
                f.write("{this is not json\n")
            if i == 33:
                broken = {k: v for k, v in p.items() if k != "title"}
                broken["id"] = "t3_broke1"
                f.write(json.dumps(broken, sort_keys=True) + "\n")
    with open("comments.jsonl", "w") as f:
        for i, c in enumerate(comments):
            f.write(json.dumps(c, sort_keys=True) + "\n")
            if i == 50:
                f.write("\n")
            if i == 100:
                bad = dict(c)
                bad["id"] = "t1_badts1"
                bad["created_utc"] = "not a number"
                f.write(json.dumps(bad, sort_keys=True) + "\n")
            if i == 150:
                bad = dict(c)
                bad["id"] = "t1_badts2"
                bad["created_utc"] = 0
                f.write(json.dumps(bad, sort_keys=True) + "\n")

    print(f"posts: {len(posts)} (+2 malformed lines)")
    print(f"comments: {len(comments)} (+3 malformed/blank lines)")


LABELS = ["positive", "negative", "anger", "anticipation", "disgust",
          "fear", "joy", "sadness", "surprise", "trust"]

LEXICON = {
    "fear": ["fear", "negative"],
    "panic": ["fear", "negative", "surprise"],
    "trust": ["trust", "positive"],
    "evidence": ["trust"],
    "hope": ["anticipation", "joy", "positive", "trust"],
    "attack": ["anger", "fear", "negative"],
    "danger": ["fear", "negative"],
    "amazing": ["joy", "positive", "surprise"],
    "disgusting": ["disgust", "negative"],
    "horrible": ["anger", "disgust", "fear", "negative"],
    "celebrate": ["anticipation", "joy", "positive", "surprise"],
    "furious": ["anger", "negative"],
    "threat": ["anger", "fear", "negative"],
    "alarm": ["fear", "surprise"],
    "disease": ["disgust", "fear", "negative", "sadness"],
    "cure": ["positive", "trust"],
    "proof": ["trust"],
    "lie": ["anger", "disgust", "negative"],
    "expose": ["negative"],
    "shocking": ["surprise", "negative"],
    "secret": ["surprise"],
    "government": ["fear", "negative", "trust"],
    "hidden": ["surprise"],
    "truth": ["positive", "trust"],
    "hoax": ["anger", "disgust", "negative"],
    "leak": ["negative"],
    "classified": ["surprise"],
    "journal": ["trust"],
    "control": ["trust"],
    "results": ["anticipation"],
}


def write_lexicon():
    with open("lexicon.txt", "w") as f:
        for word in sorted(LEXICON):
            on = LEXICON[word]
            for label in LABELS:
                f.write(f"{word}\t{label}\t{1 if label in on else 0}\n")


if __name__ == "__main__":
    main()
    write_lexicon()
