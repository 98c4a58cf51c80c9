"""Hand-written content for the News and Academic scenarios."""

NEWS = {
    "name": "News",
    "domain": "Breaking news stream",
    "window_days": 10,
    "seed": 71,
    "concepts": [
        {
            "label": "Flooding",
            "description": "River flooding, flood warnings and evacuations in the coastal region after heavy storms.",
            "keywords": ["flood", "river", "evacuation", "warning"],
            "events": [
                ("Flood warning for river towns", "Flood warning issued for river towns as water levels rise."),
                ("River flood evacuations begin", "Evacuations begin as the river flood reaches the old town."),
                ("Flood waters recede from river", "Flood waters recede from the river banks, warning lifted."),
                ("Second flood warning upstream", "Second flood warning upstream, river expected to crest tonight."),
            ],
        },
        {
            "label": "Power Outages",
            "description": "Electricity outages affecting homes, grid failures and utility restoration work.",
            "keywords": ["power", "outage", "grid", "utility"],
            "events": [
                ("Power outage hits thousands", "Power outage hits thousands of homes after grid failure."),
                ("Utility restores power to grid", "Utility restores power to most of the grid overnight."),
                ("Grid outage in hospital district", "Power grid outage in the hospital district, utility crews sent."),
                ("Rolling power outage planned", "Utility plans rolling power outage to protect the grid."),
            ],
        },
        {
            "label": "Election Campaign",
            "description": "Candidates campaigning, polls and debates ahead of the regional election.",
            "keywords": ["election", "candidate", "poll", "debate"],
            "events": [
                ("Election poll shows tight race", "New election poll shows a tight race between candidates."),
                ("Candidate debate on housing", "Election debate, candidates clashed on housing."),
                ("Candidate drops out of election", "Third candidate drops out of the election after poor poll."),
                ("Election debate ratings record", "Election debate drew record ratings, candidate gaffes trend."),
            ],
        },
        {
            "label": "Stock Market",
            "description": "Share prices, market indexes and investor reactions during the trading week.",
            "keywords": ["stocks", "market", "index", "shares"],
            "events": [
                ("Stock market index falls", "Stock market index falls as shares of insurers slide."),
                ("Shares rebound on market open", "Shares rebound on market open, index up one percent."),
                ("Market index volatile", "Stock market index volatile ahead of rate decision."),
            ],
        },
        {
            "label": "Emergency Response",
            "description": "Rescue teams, shelters and emergency services responding to the disaster.",
            "keywords": ["rescue", "shelter", "emergency", "crews"],
            "events": [
                ("Rescue crews reach stranded families", "Emergency rescue crews reach stranded families by boat."),
                ("Emergency shelter opens in school", "Emergency shelter opens in the high school gym."),
                ("Rescue crews exhausted", "Emergency rescue crews exhausted after three days of shifts."),
            ],
        },
        {
            "label": "Transport Disruption",
            "description": "Closed roads, cancelled trains and disrupted commutes across the region.",
            "keywords": ["road", "train", "closed", "commute"],
            "events": [
                ("Roads closed train lines cancelled", "Main road closed and train lines cancelled across the region."),
                ("Commute chaos road closed train delays", "Commute chaos as train delays pile up, road closed detours jammed."),
                ("Train service resumes closed road reopened", "Train service resumes, closed coastal road reopened for commute."),
                ("Bridge road closed for inspection", "Bridge road closed for inspection, commute diverted."),
            ],
        },
        {
            "label": "Public Health",
            "description": "Contaminated water advisories, disease risk and public health guidance.",
            "keywords": ["water", "advisory", "health", "boil"],
            "events": [
                ("Boil water advisory issued", "Health officials issued a boil water advisory for the east side."),
                ("Public health warns of contaminated water", "Public health warns contaminated water may spread illness."),
                ("Boil water advisory lifted", "Health advisory lifted, water safe to drink again."),
            ],
        },
        {
            "label": "Insurance Claims",
            "description": "Homeowners filing insurance claims and insurers assessing storm damage payouts.",
            "keywords": ["insurance", "claims", "damage", "payout"],
            "events": [
                ("Insurance claims surge", "Insurance claims surge as homeowners report storm damage."),
                ("Insurers delay damage payouts", "Insurers delay damage payouts, insurance claims backlog grows."),
                ("Insurance adjusters assess damage", "Insurance adjusters assess damage claims street by street."),
            ],
        },
    ],
    "chains": [
        [
            ("Flooding", "Levee breach floods eastside", "River levee breach floods eastside streets."),
            ("Power Outages", "Eastside substation flooded power out", "Eastside substation flooded, levee breach knocks power out."),
            ("Public Health", "Eastside boil water advisory after levee breach", "Eastside boil water advisory after levee breach knocked out pumps."),
            ("Emergency Response", "Eastside shelter after levee breach", "Emergency shelter opened for eastside residents after levee breach."),
            ("Insurance Claims", "Eastside levee breach insurance claims", "Insurance claims from the eastside levee breach top ten thousand."),
        ],
        [
            ("Transport Disruption", "Harbour bridge road closed by storm damage", "Harbour bridge road closed after storm damage, commute cut."),
            ("Stock Market", "Shipping shares fall harbour bridge", "Shipping shares fall as harbour bridge closure stalls port."),
            ("Election Campaign", "Candidates pledge harbour bridge repair", "Election candidates pledge harbour bridge repair funds."),
            ("Insurance Claims", "Harbour bridge insurance claims dispute", "Insurance claims dispute over who pays for harbour bridge damage."),
        ],
    ],
    "distractors": [
        ("Celebrity wedding photos", "Celebrity wedding photos published in a magazine."),
        ("Zoo welcomes baby giraffe", "City zoo welcomes a baby giraffe."),
        ("Recipe of the week", "Recipe of the week is a lemon tart."),
        ("Tennis star wins open", "Tennis star wins the open in straight sets."),
        ("New phone model leaked", "Photos of a new phone model leaked online."),
    ],
    "relations": [
        ("Flooding", "Power Outages", "CAUSES"),
        ("Flooding", "Public Health", "CAUSES"),
        ("Flooding", "Emergency Response", "TRIGGERS"),
        ("Flooding", "Transport Disruption", "CAUSES"),
        ("Flooding", "Insurance Claims", "TRIGGERS"),
        ("Power Outages", "Emergency Response", "TRIGGERS"),
        ("Insurance Claims", "Stock Market", "CAUSES"),
        ("Transport Disruption", "Stock Market", "REINFORCE"),
        ("Emergency Response", "Election Campaign", "TRIGGERS"),
        ("Public Health", "Emergency Response", "PART_OF"),
    ],
    "hierarchy": [
        ("Storm Disaster", ["Flooding", "Power Outages", "Transport Disruption", "Public Health"]),
        ("Economic Fallout", ["Stock Market", "Insurance Claims"]),
    ],
    "intents": [
        ("Track cascading storm impacts", ["Flooding", "Power Outages", "Emergency Response"], "3+ outage or rescue stories following a flood report"),
        ("Watch economic fallout of the storm", ["Insurance Claims", "Stock Market"], "insurer share moves alongside claims surges"),
    ],
}

ACADEMIC = {
    "name": "Academic",
    "domain": "Graduate research lab",
    "window_days": 30,
    "seed": 89,
    "concepts": [
        {
            "label": "Experiments",
            "description": "Running training experiments on the cluster, tuning hyperparameters and logging results.",
            "keywords": ["experiment", "training", "hyperparameters", "run"],
            "events": [
                ("Launched training experiment sweep", "Launched a training experiment sweep over learning rate hyperparameters."),
                ("Experiment run diverged", "Training experiment run diverged at epoch three, lowered hyperparameters."),
                ("Experiment results logged", "Logged training experiment results, best run beats baseline."),
                ("Reran experiment with new seed", "Reran the training experiment with a new seed to check variance."),
            ],
        },
        {
            "label": "Paper Writing",
            "description": "Drafting and revising the conference paper, figures and related work sections.",
            "keywords": ["draft", "paper", "figures", "section"],
            "events": [
                ("Drafted paper introduction section", "Drafted the paper introduction section and outline for the draft."),
                ("Paper figures redone in draft", "Redid paper figures for the results section of the draft."),
                ("Related work section draft", "Wrote a draft of the related work section of the paper."),
                ("Paper draft shared with advisor", "Shared the full paper draft with my advisor for comments."),
            ],
        },
        {
            "label": "Advisor Meetings",
            "description": "Weekly meetings with the advisor about research direction, progress and feedback.",
            "keywords": ["advisor", "meeting", "feedback", "direction"],
            "events": [
                ("Weekly advisor meeting", "Weekly advisor meeting, feedback on research direction."),
                ("Advisor meeting feedback on draft", "Advisor meeting with detailed feedback on the draft."),
                ("Advisor suggested new direction", "Advisor meeting suggested a new direction for chapter two."),
                ("Short advisor meeting check in", "Short advisor meeting, feedback was to focus."),
            ],
        },
        {
            "label": "Literature Review",
            "description": "Reading papers, summarizing prior work and tracking citations in the reference manager.",
            "keywords": ["reading", "papers", "citations", "notes"],
            "events": [
                ("Reading papers on graph memory", "Reading papers on graph memory, took citation notes."),
                ("Citation notes in reference manager", "Added citation notes for six papers to the reference manager."),
                ("Reading group papers notes", "Reading group discussed two papers, shared notes."),
            ],
        },
        {
            "label": "Teaching Assistant",
            "description": "Teaching assistant duties, grading homework, office hours and lab sections.",
            "keywords": ["grading", "office hours", "homework", "students"],
            "events": [
                ("Grading homework for students", "Spent the evening grading homework for forty students."),
                ("Office hours with students", "Office hours packed with students asking about homework."),
                ("Grading midterm exams", "Grading midterm exams with the other teaching assistant students."),
                ("Homework solutions posted for students", "Posted homework solutions for students after grading."),
            ],
        },
        {
            "label": "Conference Deadlines",
            "description": "Submission deadlines for conferences, camera ready versions and rebuttals.",
            "keywords": ["deadline", "submission", "conference", "rebuttal"],
            "events": [
                ("Conference submission deadline in two weeks", "Conference submission deadline in two weeks, planning backward."),
                ("Rebuttal for conference submission", "Wrote the rebuttal for the conference submission reviews."),
                ("Conference deadline extended", "Conference deadline extended by three days, submission relief."),
            ],
        },
        {
            "label": "Compute Resources",
            "description": "GPU cluster allocation, job queues, storage quotas and compute outages.",
            "keywords": ["gpu", "cluster", "queue", "quota"],
            "events": [
                ("GPU cluster queue full", "GPU cluster queue full, jobs waiting a day."),
                ("Storage quota exceeded on cluster", "Hit the storage quota on the GPU cluster, cleaned checkpoints."),
                ("Cluster maintenance GPU outage", "GPU cluster maintenance outage, queue paused."),
                ("Requested more GPU quota", "Requested more GPU quota on the cluster for the sweep."),
            ],
        },
        {
            "label": "Funding",
            "description": "Fellowship applications, grant reports and research funding renewals.",
            "keywords": ["fellowship", "grant", "funding", "application"],
            "events": [
                ("Fellowship application submitted", "Submitted the fellowship application for next year funding."),
                ("Grant report for funding renewal", "Helped write the grant report for funding renewal."),
                ("Fellowship funding decision", "Fellowship funding decision arrives next month."),
            ],
        },
        {
            "label": "Wellbeing",
            "description": "Stress, sleep and work life balance during the PhD, including breaks and support.",
            "keywords": ["stress", "burnout", "break", "balance"],
            "events": [
                ("Stress before deadline", "Stress high, feeling burnout before the deadline."),
                ("Took a weekend break", "Took a weekend break hiking, balance feels better."),
                ("Counselling session on stress", "Counselling session about stress and burnout."),
            ],
        },
    ],
    "chains": [
        [
            ("Compute Resources", "GPU cluster outage killed ablation jobs", "GPU cluster outage killed the ablation jobs in the queue."),
            ("Experiments", "Ablation experiment rerun after cluster outage", "Reran the ablation experiment after the cluster outage."),
            ("Paper Writing", "Ablation table added to paper draft", "Added the ablation table to the paper draft results section."),
            ("Conference Deadlines", "Submitted paper with ablation before deadline", "Conference submission with the ablation table made the deadline."),
        ],
        [
            ("Literature Review", "Found competing paper on memory consolidation", "Reading papers, found a competing paper on memory consolidation."),
            ("Advisor Meetings", "Advisor meeting on competing memory consolidation paper", "Advisor meeting about the competing memory consolidation paper."),
            ("Experiments", "Memory consolidation baseline experiment", "Training experiment to compare against the memory consolidation baseline."),
            ("Paper Writing", "Related work on memory consolidation rewritten", "Rewrote the related work section on memory consolidation."),
            ("Wellbeing", "Stress from memory consolidation rewrite", "Stress and burnout from the memory consolidation rewrite."),
        ],
    ],
    "distractors": [
        ("Roommate moved out", "My roommate moved out this weekend."),
        ("Farmers market haul", "Bought tomatoes and bread at the farmers market."),
        ("Bike tyre puncture", "Bike tyre punctured on the way home."),
        ("Watched a comedy show", "Watched a stand up comedy show downtown."),
        ("Called grandparents", "Long call with my grandparents tonight."),
        ("Library fine paid", "Paid a small library fine for a late novel."),
    ],
    "relations": [
        ("Compute Resources", "Experiments", "CAUSES"),
        ("Experiments", "Paper Writing", "TRIGGERS"),
        ("Literature Review", "Paper Writing", "REINFORCE"),
        ("Advisor Meetings", "Paper Writing", "REINFORCE"),
        ("Conference Deadlines", "Paper Writing", "TRIGGERS"),
        ("Conference Deadlines", "Wellbeing", "CAUSES"),
        ("Teaching Assistant", "Wellbeing", "CAUSES"),
        ("Funding", "Compute Resources", "PART_OF"),
        ("Literature Review", "Experiments", "TRIGGERS"),
        ("Advisor Meetings", "Experiments", "TRIGGERS"),
        ("Experiments", "Conference Deadlines", "PART_OF"),
        ("Funding", "Teaching Assistant", "PART_OF"),
    ],
    "hierarchy": [
        ("Research", ["Experiments", "Paper Writing", "Literature Review", "Conference Deadlines"]),
        ("Lab Logistics", ["Compute Resources", "Funding"]),
        ("Student Life", ["Teaching Assistant", "Wellbeing", "Advisor Meetings"]),
    ],
    "intents": [
        ("Secure compute before the deadline", ["Compute Resources", "Experiments", "Conference Deadlines"], "cluster outages or full queues during deadline weeks"),
        ("Guard against deadline burnout", ["Wellbeing", "Conference Deadlines"], "stress mentions clustered before submissions"),
    ],
}
