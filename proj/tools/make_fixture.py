#!/usr/bin/env python3
# Copyright 2026 The VoiceLens Authors
# SPDX-License-Identifier: Apache-2.0
"""Regenerates the synthetic fixture under data/fixture.

The corpus is invented interview-style text: each paragraph mentions the
keywords of one to three child codes, carries a designed sentiment, and is
attributed to an interviewee with a role group. Human labels are the designed
codes with some parent-only substitutions and sibling swaps so that machine
and human labels disagree more at the child level than at the parent level.

Usage: tools/make_fixture.py [output_dir]
"""

import csv
import random
import sys
from pathlib import Path

SEED = 20240611

# (parent, child, description, keywords, weight)
CODEBOOK = [
    ("Data, evidence, and accountability",
     "Data access, analysis, reporting, use, quality and transparency",
     "Collecting, sharing and publishing education data and using it to guide practice and policy.",
     ["data dashboard", "data quality", "reporting", "transparency"], 9.3),
    ("Governance, leadership, and community partnership", "Coalition and relationship",
     "Building alliances and working relationships among organizations and people.",
     ["coalition", "relationships", "trust", "partners"], 6.8),
    ("Governance, leadership, and community partnership", "Community",
     "Involving families and local residents in decisions about their schools.",
     ["community members", "families", "neighborhood", "community voice"], 5.9),
    ("Governance, leadership, and community partnership", "Leadership in diversity",
     "Who holds leadership roles and whether they reflect the students served.",
     ["leaders of color", "diverse leadership", "representation", "principal pipeline"], 5.4),
    ("Culture, climate and environment", "Anti-racism",
     "Naming and dismantling racist structures and practices in schools.",
     ["racism", "anti-racist", "racial bias", "racial equity"], 5.1),
    ("Staffing resources", "Diversify teacher workforce (teacher labor market)",
     "Recruiting and keeping a teaching staff that mirrors the student body.",
     ["teachers of color", "teacher shortage", "hiring", "recruitment"], 4.8),
    ("Student supports and interventions", "Learning opportunities and programs",
     "Access to programs that extend or enrich learning beyond the core day.",
     ["after-school", "summer learning", "enrichment", "dual credit"], 4.3),
    ("Staffing resources", "Mentoring, coaching, and teacher learning",
     "Ongoing learning and induction supports for educators.",
     ["mentoring", "coaching", "professional development", "new teachers"], 4.1),
    ("Data, evidence, and accountability",
     "Goals, outcomes, and measures: Tests, standards, graduation requirements",
     "The targets and measures used to judge student and school performance.",
     ["graduation requirements", "test scores", "learning standards", "outcome measures"], 3.6),
    ("System supports and interventions", "School system support and improvement",
     "Help that districts and the state give struggling schools.",
     ["systemic help", "technical assistance", "district assistance", "turnaround"], 3.5),
    ("Curriculum and instruction", "Curriculum development and instructional delivery",
     "What is taught and how lessons are designed and delivered.",
     ["curriculum", "lesson planning", "instructional materials", "pacing"], 3.3),
    ("School finance", "Funding formula",
     "How the state distributes basic education dollars to districts.",
     ["funding formula", "prototypical school", "apportionment", "allocation model"], 3.1),
    ("Governance, leadership, and community partnership", "Legislation process",
     "How education bills are written, negotiated and passed.",
     ["legislature", "bill", "lawmakers", "legislative session"], 2.8),
    ("Staffing resources", "Teacher union, salary, workforce",
     "Compensation, bargaining and working conditions of school staff.",
     ["union", "salary", "collective bargaining", "pay scale"], 2.7),
    ("Governance, leadership, and community partnership",
     "Local control and district policies and politics",
     "Decisions made at the district level and the politics around them.",
     ["local control", "district policy", "superintendent", "district politics"], 2.6),
    ("Data, evidence, and accountability", "Accountability system",
     "State systems that rate schools and trigger consequences.",
     ["accountability", "school ratings", "performance index", "state oversight"], 2.6),
    ("Student supports and interventions", "Differentiated student strategies",
     "Adjusting instruction and supports to individual student needs.",
     ["differentiated", "individualized", "tiered interventions", "small groups"], 2.5),
    ("Student supports and interventions", "Multilingual programs",
     "Programs serving students who are learning English or more than one language.",
     ["multilingual", "english learners", "dual language", "bilingual"], 2.3),
    ("Governance, leadership, and community partnership", "Government relationships",
     "Working ties between schools and state, federal or tribal governments.",
     ["state agency", "federal government", "tribal governments", "intergovernmental"], 2.2),
    ("School finance", "Targeted funds",
     "Money set aside for particular students or purposes.",
     ["targeted funds", "categorical grants", "earmarked", "grant program"], 2.2),
    ("Student supports and interventions", "Students' SEL and health",
     "Social, emotional and physical wellbeing of students.",
     ["mental health", "social emotional", "counselors", "wellness"], 2.0),
    ("Culture, climate and environment", "Trauma at home",
     "Hardship outside school that affects how students learn.",
     ["trauma", "homelessness", "poverty at home", "family stress"], 1.8),
    ("Governance, leadership, and community partnership", "School board",
     "Elected boards and their role in running districts.",
     ["school board", "board members", "board meeting", "board elections"], 1.7),
    ("School finance", "Progressive funding",
     "Allocating more resources where student needs are higher.",
     ["progressive funding", "weighted funding", "need-based funding", "extra dollars"], 1.6),
    ("System supports and interventions", "Judicial systems",
     "School discipline and its links to the justice system.",
     ["suspension", "expulsion", "discipline", "juvenile justice"], 1.6),
    ("Curriculum and instruction", "Instructional programs",
     "Packaged programs adopted for reading, math or intervention.",
     ["instructional program", "reading program", "math program", "intervention program"], 1.4),
    ("Data, evidence, and accountability",
     "Tests and inconsistent standards for college readiness and students' success",
     "Mismatched expectations between high school exit and college entry.",
     ["college readiness", "inconsistent standards", "placement tests", "college entrance"], 1.2),
    ("Data, evidence, and accountability", "Data capacity",
     "Staff, tools and skills available to collect and analyze data.",
     ["data capacity", "data systems", "data staff", "analytic capacity"], 1.1),
]

PARENT_ORDER = [
    "Culture, climate and environment",
    "Curriculum and instruction",
    "Data, evidence, and accountability",
    "Governance, leadership, and community partnership",
    "School finance",
    "Staffing resources",
    "Student supports and interventions",
    "System supports and interventions",
]

# Parents that human coders may use as parent-only labels.
PARENT_ONLY_OK = {
    "Data, evidence, and accountability",
    "Governance, leadership, and community partnership",
    "Culture, climate and environment",
    "Staffing resources",
    "Student supports and interventions",
    "School finance",
}

ROLES = ["Administrator/Policymaker", "Educator", "Non-Profit/Advocate"]
ROLE_FAVORITES = {
    "Administrator/Policymaker": {"School finance", "Governance, leadership, and community partnership"},
    "Educator": {"Staffing resources", "Student supports and interventions"},
    "Non-Profit/Advocate": {"Governance, leadership, and community partnership", "Culture, climate and environment"},
}

CODE_TEMPLATES = [
    "We spend a lot of time on {a}, and {b} keeps coming up in those conversations.",
    "When people ask me about {a}, I usually end up talking about {b} as well.",
    "In my view {a} is central here, along with {b}.",
    "There was a whole meeting last month about {a}; most of it was about {b}.",
    "You cannot separate {a} from {b} in how this plays out for kids.",
    "Our team has been looking closely at {a} and {b} this year.",
]

SENTIMENT = {
    "Positive": [
        "The recent changes have improved things and the support has been effective.",
        "I appreciate the progress we have made, and it feels like a real success.",
        "Honestly it has been helpful, and students are doing better now.",
        "It has been a great benefit for students and staff alike.",
    ],
    "Negative": [
        "There is a lack of resources, and that is a real problem.",
        "The biggest challenge is the barriers that students face every day.",
        "It has failed a lot of kids, and the results are poor.",
        "What we have is inadequate, and the issues keep getting worse.",
    ],
    "Neutral": [
        "That is basically how the process works where I am.",
        "We go over it every month with the same group of people.",
        "It depends on the year and on the region.",
        "That is the way it has been set up for a while.",
    ],
}

FILLER = [
    "I have been in this role for about ten years.",
    "Let me give you an example from last spring.",
    "We see this in a lot of places across the state.",
    "I think about this a lot in my work.",
    "So to answer your question,",
]

LOCATIONS = ["Region 1", "Region 2", "Region 3", "Region 4"]


def write_codebook(path):
    with path.open("w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["Parent", "Child", "Child_description", "Key words"])
        for parent in PARENT_ORDER:
            for p, child, desc, kws, _ in CODEBOOK:
                if p == parent:
                    w.writerow([p, child, desc, "; ".join(kws)])


def pick_codes(rng, role, n):
    weights = []
    for p, _, _, _, wgt in CODEBOOK:
        weights.append(wgt * (2.0 if p in ROLE_FAVORITES[role] else 1.0))
    chosen = []
    while len(chosen) < n:
        i = rng.choices(range(len(CODEBOOK)), weights=weights)[0]
        if i not in chosen:
            chosen.append(i)
    return chosen


def make_corpus(rng, n_interviewees=40, per_interviewee=6):
    rows, human = [], []
    pid = 0
    for person in range(n_interviewees):
        role = ROLES[person % 3]
        location = LOCATIONS[person % 4]
        iid = "I%03d" % (person + 1)
        for _ in range(per_interviewee):
            pid += 1
            n_codes = rng.choices([1, 2, 3], weights=[3, 4, 3])[0]
            codes = pick_codes(rng, role, n_codes)
            sentiment = rng.choices(["Positive", "Negative", "Neutral"], weights=[3, 4, 3])[0]
            parts = []
            if rng.random() < 0.5:
                parts.append(rng.choice(FILLER))
            for i in codes:
                kws = CODEBOOK[i][3]
                a, b = rng.sample(kws, 2)
                parts.append(rng.choice(CODE_TEMPLATES).format(a=a, b=b))
            parts.append(rng.choice(SENTIMENT[sentiment]))
            text = " ".join(parts)
            para_id = "P%04d" % pid
            rows.append([para_id, text, iid, role, location])

            labels = []
            for i in codes:
                parent, child = CODEBOOK[i][0], CODEBOOK[i][1]
                r = rng.random()
                if r < 0.12 and parent in PARENT_ONLY_OK:
                    labels.append("parent:" + parent)
                elif r < 0.22:
                    siblings = [c[1] for c in CODEBOOK if c[0] == parent and c[1] != child]
                    labels.append(rng.choice(siblings) if siblings else child)
                else:
                    labels.append(child)
            dedup = []
            for l in labels:
                if l not in dedup:
                    dedup.append(l)
            human_sent = sentiment if rng.random() > 0.1 else "Neutral"
            human.append([para_id] + (dedup + ["", "", ""])[:3] + [human_sent])
    return rows, human


def make_shuffle_fixture(rng, n=500, n_codes=10):
    codes = [CODEBOOK[i][1] for i in range(n_codes)]
    return [["S%04d" % (i + 1), rng.choice(codes)] for i in range(n)]


def main():
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "data" / "fixture"
    out.mkdir(parents=True, exist_ok=True)
    rng = random.Random(SEED)
    write_codebook(out / "codebook.csv")
    rows, human = make_corpus(rng)
    with (out / "corpus.csv").open("w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["id", "text", "interviewee_id", "role_group", "location"])
        w.writerows(rows)
    with (out / "human_labels.csv").open("w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["paragraph_id", "theme_1", "theme_2", "theme_3", "sentiment"])
        w.writerows(human)
    with (out / "shuffle_500.csv").open("w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["paragraph_id", "code"])
        w.writerows(make_shuffle_fixture(rng))


if __name__ == "__main__":
    main()
