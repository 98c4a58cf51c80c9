"""Hand-written content for the SoftEng and Health scenarios."""

SOFTENG = {
    "name": "SoftEng",
    "domain": "Professional/tech work",
    "window_days": 14,
    "seed": 11,
    "concepts": [
        {
            "label": "Code Review",
            "description": "Reviewing pull requests, leaving review comments and approving code changes before merge.",
            "keywords": ["review", "pull request", "comments", "approve"],
            "events": [
                ("Reviewed pull request for logging cleanup", "Left review comments on the logging pull request and asked for smaller functions before approving."),
                ("Approved pull request after second review", "Second review pass on the cache pull request went fine so I approved the code change."),
                ("Review comments on config loader pull request", "Wrote review comments about error handling in the config loader pull request."),
                ("Pull request review took all morning", "Spent the morning on review of three pull requests, approved two and blocked one."),
            ],
        },
        {
            "label": "Sprint Planning",
            "description": "Planning sprint scope, estimating tickets and committing to sprint goals with the team.",
            "keywords": ["sprint", "planning", "estimate", "tickets"],
            "events": [
                ("Sprint planning estimated tickets", "Sprint planning session where we estimated tickets and trimmed scope for the sprint goal."),
                ("Backlog grooming before sprint planning", "Groomed backlog tickets so sprint planning can estimate them quickly tomorrow."),
                ("Sprint planning ran over time", "Sprint planning ran long because ticket estimates disagreed across the team."),
                ("Sprint goal tickets re estimated", "Mid sprint check, re estimated two tickets that blew past the sprint planning numbers."),
            ],
        },
        {
            "label": "Deployment",
            "description": "Deploying builds of services to staging and production through the release pipeline.",
            "keywords": ["deploy", "staging", "production", "pipeline"],
            "events": [
                ("Deployed search service to staging", "Deploy of the search service build to staging through the release pipeline went cleanly."),
                ("Production deploy of billing service", "Ran the production deploy for the billing service after staging checks passed in the pipeline."),
                ("Pipeline deploy stuck on staging step", "The release pipeline deploy stalled at the staging step until I restarted the runner."),
            ],
        },
        {
            "label": "Bug Triage",
            "description": "Triaging incoming bug reports, reproducing bugs and assigning severity and owners.",
            "keywords": ["bug", "triage", "severity", "reproduce"],
            "events": [
                ("Bug triage of new reports", "Weekly bug triage, assigned severity to six new bug reports and found owners."),
                ("Reproduced flaky upload bug", "Managed to reproduce the upload bug and raised its severity during triage."),
                ("Triage meeting closed stale bug reports", "Bug triage meeting closed stale bug reports that nobody could reproduce."),
            ],
        },
        {
            "label": "Incident Response",
            "description": "Responding to production incidents and outages, paging on call and restoring service.",
            "keywords": ["incident", "outage", "on call", "paged"],
            "events": [
                ("Paged for database outage", "Got paged on call at night for a database outage incident and restored service in forty minutes."),
                ("Incident bridge for payment outage", "Joined the incident bridge for a payment outage and coordinated the on call rotation."),
                ("Minor incident from expired certificate", "On call handled a minor incident caused by an expired certificate outage on the api gateway."),
            ],
        },
        {
            "label": "Testing",
            "description": "Writing and running unit and integration tests, fixing failing test suites in continuous integration.",
            "keywords": ["tests", "unit", "integration", "failing"],
            "events": [
                ("Wrote unit tests for parser pull request", "Wrote unit tests for the parser pull request and raised coverage before the integration tests."),
                ("Integration tests failing on pull request", "Integration tests failing on a pull request because of a timezone assumption in the test fixtures."),
                ("Fixed failing unit tests", "Fixed the failing unit tests in continuous integration after the dependency upgrade."),
                ("Added integration tests for export", "Added integration tests for the export endpoint so failing cases show up in continuous integration."),
            ],
        },
        {
            "label": "Documentation",
            "description": "Writing design docs, runbooks and postmortem documents for the team wiki.",
            "keywords": ["docs", "runbook", "design doc", "wiki"],
            "events": [
                ("Updated runbook docs on wiki", "Updated the runbook docs on the wiki for restarting the queue workers."),
                ("Design doc for rate limiter", "Drafted a design doc on the wiki for the new rate limiter and shared it for comments."),
                ("Cleaned outdated wiki docs", "Archived outdated wiki docs and linked the current runbook from the team page."),
            ],
        },
        {
            "label": "Team Meetings",
            "description": "Daily standups, one on one meetings and retrospectives with the engineering team.",
            "keywords": ["standup", "retro", "one on one", "meeting"],
            "events": [
                ("Daily standup blockers", "Daily standup meeting, raised my blocker on access to the staging database."),
                ("One on one meeting with manager", "One on one meeting with my manager about growth goals and workload."),
                ("Sprint retro meeting", "Retro meeting where the team agreed to shorten standup and rotate the notes."),
                ("Standup meeting moved online", "Standup meeting moved online today because half the team was travelling."),
            ],
        },
    ],
    "chains": [
        [
            ("Deployment", "Deployed auth service v2.3 to staging", "Deploy of auth service v2.3 to staging through the pipeline ahead of the client demo."),
            ("Bug Triage", "Login bug in auth service v2.3 on staging", "Triage found a login bug in auth service v2.3 on staging, severity high, could reproduce it."),
            ("Incident Response", "Client demo login failure from auth service v2.3", "Incident during the client demo, login failed because of the auth service v2.3 bug, paged on call."),
            ("Documentation", "Postmortem doc for auth service v2.3 demo failure", "Wrote the postmortem docs on the wiki for the auth service v2.3 demo failure."),
        ],
        [
            ("Sprint Planning", "Sprint planning committed payments refactor", "Sprint planning committed the payments refactor tickets, estimated at eight points."),
            ("Code Review", "Review of payments refactor pull request 418", "Review comments on payments refactor pull request 418 flagged a race in the retry loop."),
            ("Testing", "Integration tests failing on payments refactor 418", "Integration tests failing on payments refactor pull request 418 because of the retry race."),
            ("Deployment", "Hotfix deploy of payments refactor 418", "Production deploy of the payments refactor 418 hotfix through the pipeline after tests passed."),
        ],
    ],
    "distractors": [
        ("Heavy rain on the commute", "Heavy rain made the bus forty minutes late this morning."),
        ("Bought a new coffee grinder", "Ordered a burr coffee grinder after the old one broke."),
        ("Watched the football final", "Stayed up for the football final, it went to penalties."),
        ("Dentist appointment rescheduled", "The dentist office moved my appointment to next Thursday."),
        ("Neighbour's dog got loose", "Helped catch the neighbour's dog that got loose in the park."),
    ],
    "relations": [
        ("Sprint Planning", "Code Review", "TRIGGERS"),
        ("Code Review", "Testing", "TRIGGERS"),
        ("Testing", "Deployment", "TRIGGERS"),
        ("Deployment", "Bug Triage", "CAUSES"),
        ("Bug Triage", "Incident Response", "CAUSES"),
        ("Incident Response", "Documentation", "TRIGGERS"),
        ("Team Meetings", "Sprint Planning", "PART_OF"),
        ("Code Review", "Documentation", "REINFORCE"),
        ("Testing", "Bug Triage", "REINFORCE"),
        ("Incident Response", "Team Meetings", "TRIGGERS"),
    ],
    "hierarchy": [
        ("Work Projects", ["Code Review", "Testing", "Documentation"]),
        ("Release Process", ["Deployment", "Bug Triage", "Incident Response"]),
    ],
    "intents": [
        ("Stabilize the release pipeline", ["Deployment", "Bug Triage", "Incident Response"], "3+ deploy, bug or incident events touching the same service within a week"),
        ("Keep review and test quality high", ["Code Review", "Testing"], "3+ review or failing-test events on the same pull request"),
    ],
}

HEALTH = {
    "name": "Health",
    "domain": "Medical recovery",
    "window_days": 16,
    "seed": 23,
    "concepts": [
        {
            "label": "Physical Therapy",
            "description": "Physical therapy sessions and home exercises to rebuild knee strength and mobility after surgery.",
            "keywords": ["physio", "therapy", "knee", "exercises"],
            "events": [
                ("Physio therapy session for knee pain", "Physio therapy session worked on knee bends and balance exercises to ease knee pain."),
                ("Home knee exercises done", "Did the home knee exercises from physio therapy twice today, knee pain manageable."),
                ("Physio added new knee exercises", "Physio therapy added step ups to my knee exercises list."),
            ],
        },
        {
            "label": "Medication",
            "description": "Taking prescribed painkillers and anti inflammatory medication on schedule and tracking doses.",
            "keywords": ["medication", "dose", "painkiller", "pharmacy"],
            "events": [
                ("Took morning medication dose", "Took the morning painkiller medication dose with breakfast."),
                ("Pharmacy refill of medication", "Picked up the medication refill at the pharmacy, same painkiller dose."),
                ("Skipped evening medication dose", "Forgot the evening medication dose, painkiller taken late."),
            ],
        },
        {
            "label": "Pain Tracking",
            "description": "Logging daily knee pain levels and swelling to spot patterns in recovery.",
            "keywords": ["pain", "swelling", "level", "log"],
            "events": [
                ("Logged knee pain level four", "Pain log entry, knee pain level four with mild swelling."),
                ("Swelling worse after stairs", "Knee swelling and pain level went up after the stairs, noted it in the log."),
                ("Pain level dropped to two", "Pain log shows knee pain level two today, swelling down."),
                ("Evening pain log entry", "Evening pain log, knee pain level three, swelling steady after the walk."),
            ],
        },
        {
            "label": "Doctor Visits",
            "description": "Follow up appointments with the surgeon and general practitioner to review recovery.",
            "keywords": ["doctor", "surgeon", "appointment", "follow up"],
            "events": [
                ("Surgeon follow up appointment", "Follow up appointment with the surgeon, doctor happy with the scar."),
                ("Booked doctor appointment", "Booked a follow up appointment with the doctor for next month."),
                ("GP doctor appointment on sleep", "Doctor appointment with my GP about poor sleep after surgery."),
            ],
        },
        {
            "label": "Sleep",
            "description": "Sleep quality and night waking during recovery, including naps and bedtime routine.",
            "keywords": ["sleep", "night", "woke", "nap"],
            "events": [
                ("Poor sleep woke at night", "Woke three times at night, sleep broken by knee ache."),
                ("Better night sleep lifted mood", "Slept through the night for the first time this week, no nap needed, mood better."),
                ("Afternoon nap after bad night sleep", "Took a long nap after another bad night of sleep."),
            ],
        },
        {
            "label": "Nutrition",
            "description": "Eating protein rich meals and staying hydrated to support healing.",
            "keywords": ["meal", "protein", "water", "diet"],
            "events": [
                ("High protein meal prep", "Meal prep for the week with protein heavy diet recipes."),
                ("Drank more water today", "Tracked water intake and hit two litres alongside protein meals."),
                ("Skipped lunch meal", "Skipped a proper lunch meal, only snacks, diet slipping."),
            ],
        },
        {
            "label": "Mobility Milestones",
            "description": "Recovery milestones such as walking without crutches, climbing stairs and returning to driving.",
            "keywords": ["walk", "crutches", "stairs", "milestone"],
            "events": [
                ("Walked without crutches", "Milestone, walked to the kitchen without crutches today."),
                ("Climbed stairs unaided", "Climbed a full flight of stairs unaided, new walk milestone."),
                ("First walk around the block", "First walk around the block without crutches, slow but steady milestone."),
            ],
        },
        {
            "label": "Mood",
            "description": "Emotional state during recovery, frustration, motivation and support from friends.",
            "keywords": ["mood", "frustrated", "motivated", "friends"],
            "events": [
                ("Frustrated mood about slow recovery", "Mood low, frustrated that recovery feels slow and night sleep is patchy."),
                ("Friends visited lifted mood", "Friends visited with cake, mood much better and motivated."),
                ("Motivated mood after physio praise", "Felt motivated, mood up after praise for progress and a decent night of sleep."),
            ],
        },
    ],
    "chains": [
        [
            ("Physical Therapy", "Pushed knee exercises too hard at physio", "Physio therapy session, pushed the knee exercises too hard on the leg press."),
            ("Pain Tracking", "Knee swelling spike after leg press", "Pain log shows knee swelling spike and pain level seven after the leg press."),
            ("Doctor Visits", "Urgent doctor appointment for knee swelling", "Urgent follow up appointment, doctor checked the knee swelling after the leg press."),
            ("Medication", "New anti inflammatory medication dose for knee swelling", "Doctor switched medication to an anti inflammatory dose for the knee swelling."),
        ],
        [
            ("Sleep", "Woke at night from knee ache again", "Woke at night again from knee ache, sleep under five hours."),
            ("Mood", "Frustrated mood from lack of sleep", "Mood frustrated and short tempered from lack of sleep."),
            ("Doctor Visits", "Doctor appointment about sleep and mood", "Doctor appointment about sleep and mood, GP suggested a bedtime routine."),
            ("Sleep", "Bedtime routine improved night sleep", "New bedtime routine from the doctor, slept through the night."),
            ("Mood", "Mood motivated after good sleep", "Mood motivated after two nights of good sleep."),
        ],
    ],
    "distractors": [
        ("Train strike announced", "News said there will be a train strike next week."),
        ("Sister's birthday plans", "Started planning a surprise for my sister's birthday."),
        ("Watched a documentary on whales", "Watched a documentary about humpback whales migrating."),
        ("Internet outage at home", "Internet at home was down most of the afternoon."),
        ("Election debate on tv", "Caught part of the election debate on tv tonight."),
    ],
    "relations": [
        ("Physical Therapy", "Pain Tracking", "CAUSES"),
        ("Pain Tracking", "Doctor Visits", "TRIGGERS"),
        ("Doctor Visits", "Medication", "CAUSES"),
        ("Medication", "Pain Tracking", "REINFORCE"),
        ("Sleep", "Mood", "CAUSES"),
        ("Mood", "Physical Therapy", "REINFORCE"),
        ("Nutrition", "Mobility Milestones", "REINFORCE"),
        ("Physical Therapy", "Mobility Milestones", "CAUSES"),
        ("Pain Tracking", "Sleep", "CAUSES"),
        ("Doctor Visits", "Sleep", "TRIGGERS"),
        ("Mobility Milestones", "Mood", "REINFORCE"),
    ],
    "hierarchy": [
        ("Clinical Care", ["Medication", "Doctor Visits"]),
        ("Rehabilitation", ["Physical Therapy", "Mobility Milestones", "Pain Tracking"]),
    ],
    "intents": [
        ("Manage knee swelling flare ups", ["Physical Therapy", "Pain Tracking", "Medication"], "3+ swelling or pain spikes following therapy within a week"),
        ("Fix sleep to support recovery", ["Sleep", "Mood"], "3+ nights of broken sleep with low mood the next day"),
    ],
}
