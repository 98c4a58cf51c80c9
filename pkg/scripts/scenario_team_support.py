"""Hand-written content for the Team and Support scenarios."""

TEAM = {
    "name": "Team",
    "domain": "Product launch",
    "window_days": 21,
    "seed": 37,
    "concepts": [
        {
            "label": "Launch Timeline",
            "description": "Tracking the product launch date, milestones and slipping schedule for the release.",
            "keywords": ["launch", "date", "milestone", "schedule"],
            "events": [
                ("Launch date milestone review", "Reviewed the launch date milestones, beta milestone still on schedule."),
                ("Launch schedule slipped a week", "Launch schedule slipped one week, milestone for beta moved."),
                ("Launch milestone checklist updated", "Updated the launch milestone checklist with the new schedule dates."),
                ("Board asked about launch date", "Board asked whether the launch date holds, shared the milestone schedule."),
            ],
        },
        {
            "label": "Marketing Campaign",
            "description": "Planning launch marketing, press release copy, campaign assets and social posts.",
            "keywords": ["marketing", "campaign", "press", "social"],
            "events": [
                ("Marketing campaign kickoff", "Marketing campaign kickoff, agreed social posts and press outreach."),
                ("Press release draft for campaign", "Drafted the press release copy for the marketing campaign."),
                ("Social campaign assets approved", "Approved the social campaign assets from the marketing agency."),
            ],
        },
        {
            "label": "Engineering Readiness",
            "description": "Feature freeze, release candidate builds and engineering sign off before launch.",
            "keywords": ["feature freeze", "release candidate", "build", "sign off"],
            "events": [
                ("Feature freeze for release candidate", "Engineering called feature freeze ahead of the release candidate build."),
                ("Release candidate build two", "Cut release candidate build two after engineering fixed the crash."),
                ("Engineering sign off on release candidate", "Engineering gave sign off on the release candidate build."),
            ],
        },
        {
            "label": "Budget",
            "description": "Launch budget approvals, vendor invoices and spend against the plan.",
            "keywords": ["budget", "spend", "invoice", "vendor"],
            "events": [
                ("Budget approval for launch spend", "Finance approved the launch budget with a cap on vendor spend."),
                ("Vendor invoice over budget", "Vendor invoice came in over budget, flagged the spend to finance."),
                ("Budget spend tracker updated", "Updated the budget spend tracker with this week's vendor invoices."),
            ],
        },
        {
            "label": "Customer Beta",
            "description": "Running the customer beta program, onboarding beta customers and collecting beta feedback.",
            "keywords": ["beta", "customers", "feedback", "onboarding"],
            "events": [
                ("Onboarded beta customers", "Onboarded five beta customers into the beta program today."),
                ("Beta customers feedback survey", "Beta feedback survey results from customers, onboarding was confusing."),
                ("Beta feedback call with customers", "Call with two beta customers collecting feedback on reports."),
            ],
        },
        {
            "label": "Hiring",
            "description": "Interviewing and hiring support staff and engineers to scale for the launch.",
            "keywords": ["hiring", "interview", "candidate", "offer"],
            "events": [
                ("Interview candidate for support role", "Interviewed a candidate for the support role, strong hiring signal."),
                ("Hiring offer sent to candidate", "Hiring manager sent an offer to the support candidate."),
                ("Interview panel hiring debrief", "Interview panel debrief, hiring decision on two candidates."),
            ],
        },
        {
            "label": "Stakeholder Updates",
            "description": "Weekly status reports and stakeholder updates to leadership about launch progress.",
            "keywords": ["status", "stakeholder", "leadership", "report"],
            "events": [
                ("Weekly stakeholder status report", "Sent the weekly stakeholder status report to leadership."),
                ("Leadership status review meeting", "Leadership status review, stakeholder concerns about risk."),
                ("Stakeholder status email drafted", "Drafted the stakeholder status email for leadership."),
            ],
        },
        {
            "label": "Team Morale",
            "description": "Team energy, burnout from crunch, celebrations and recognition across the launch team.",
            "keywords": ["morale", "burnout", "crunch", "celebrate"],
            "events": [
                ("Team morale dipping from crunch", "Team morale dipping, crunch hours causing burnout talk."),
                ("Celebrated beta milestone with team", "Team lunch to celebrate, morale up after weeks of crunch."),
                ("Burnout check in on team morale", "Ran a burnout check in, team morale mixed under crunch."),
            ],
        },
    ],
    "chains": [
        [
            ("Engineering Readiness", "Release candidate crash in checkout flow", "Release candidate build crashed in the checkout flow, engineering sign off blocked."),
            ("Launch Timeline", "Launch date slipped for checkout flow crash", "Launch date slipped because the checkout flow crash blocked the milestone."),
            ("Stakeholder Updates", "Leadership status on checkout flow slip", "Leadership status report explained the checkout flow crash and launch slip."),
            ("Team Morale", "Crunch to fix checkout flow crash", "Weekend crunch to fix the checkout flow crash, team morale low."),
        ],
        [
            ("Customer Beta", "Beta customers asked for bulk export", "Beta feedback from customers asking for bulk export in reports."),
            ("Engineering Readiness", "Bulk export added after feature freeze", "Engineering added bulk export as an exception after feature freeze."),
            ("Budget", "Contractor spend for bulk export", "Vendor contractor spend approved from the budget for bulk export."),
            ("Marketing Campaign", "Campaign highlights bulk export", "Marketing campaign press copy now highlights bulk export."),
        ],
    ],
    "distractors": [
        ("Parking garage closed", "The office parking garage was closed for repairs."),
        ("Fire drill at lunch", "Fire drill cut lunch short today."),
        ("New espresso machine in kitchen", "Someone installed a new espresso machine in the kitchen."),
        ("Gym class cancelled", "Evening spin class at the gym got cancelled."),
        ("Plumber fixed the sink", "Plumber came by and fixed the leaking sink at home."),
    ],
    "relations": [
        ("Engineering Readiness", "Launch Timeline", "CAUSES"),
        ("Launch Timeline", "Stakeholder Updates", "TRIGGERS"),
        ("Launch Timeline", "Team Morale", "CAUSES"),
        ("Customer Beta", "Engineering Readiness", "TRIGGERS"),
        ("Budget", "Marketing Campaign", "PART_OF"),
        ("Budget", "Hiring", "PART_OF"),
        ("Marketing Campaign", "Launch Timeline", "PART_OF"),
        ("Customer Beta", "Marketing Campaign", "REINFORCE"),
        ("Hiring", "Team Morale", "REINFORCE"),
        ("Stakeholder Updates", "Budget", "TRIGGERS"),
    ],
    "hierarchy": [
        ("Launch Execution", ["Launch Timeline", "Engineering Readiness", "Customer Beta"]),
        ("Launch Resources", ["Budget", "Hiring"]),
    ],
    "intents": [
        ("Protect the launch date", ["Engineering Readiness", "Launch Timeline", "Stakeholder Updates"], "3+ blocking build or slip events within a week"),
        ("Prevent team burnout", ["Team Morale", "Hiring"], "repeated crunch or burnout mentions while hiring lags"),
    ],
}

SUPPORT = {
    "name": "Support",
    "domain": "Customer support center",
    "window_days": 18,
    "seed": 53,
    "concepts": [
        {
            "label": "Password Resets",
            "description": "Customers locked out of accounts asking for password reset links and login help.",
            "keywords": ["password", "reset", "login", "locked"],
            "events": [
                ("Password reset ticket", "Customer locked out, sent a password reset link for login."),
                ("Password reset link expired", "Password reset link expired before the customer could login."),
                ("Locked account password reset", "Another locked account asking for a password reset today."),
                ("Batch of password reset tickets", "Morning batch of password reset tickets, mostly login lockouts."),
            ],
        },
        {
            "label": "Billing Disputes",
            "description": "Customers disputing charges, asking for refunds and correcting invoices.",
            "keywords": ["billing", "refund", "charge", "invoice"],
            "events": [
                ("Billing dispute over double charge", "Customer disputed a double charge on billing, issued a refund."),
                ("Refund request for annual charge", "Refund request on the annual charge, billing approved it."),
                ("Invoice correction for billing", "Corrected a billing invoice with the wrong charge amount."),
                ("Billing refund escalated", "Billing refund over limit, escalated the charge dispute."),
            ],
        },
        {
            "label": "Shipping Delays",
            "description": "Orders arriving late, tracking numbers not updating and courier delays.",
            "keywords": ["shipping", "delay", "tracking", "courier"],
            "events": [
                ("Shipping delay on order", "Customer order delayed, shipping tracking stuck for three days."),
                ("Courier delay in north region", "Courier shipping delay across the north region, tracking frozen."),
                ("Tracking number not updating", "Tracking number not updating, shipping delay confirmed with courier."),
                ("Shipping delay apology credits", "Sent apology credits for the shipping delay on late orders."),
            ],
        },
        {
            "label": "Escalations",
            "description": "Tickets escalated to tier two or supervisors when agents cannot resolve them.",
            "keywords": ["escalation", "tier two", "supervisor", "escalated"],
            "events": [
                ("Escalated ticket to tier two", "Escalated a ticket to tier two after the supervisor reviewed it."),
                ("Supervisor escalation on angry caller", "Supervisor took over the escalation from an angry caller."),
                ("Tier two escalation backlog", "Tier two escalation backlog growing, supervisor asked for help."),
                ("Escalation closed by supervisor", "Supervisor closed the escalation with a goodwill gesture."),
            ],
        },
        {
            "label": "Product Bugs",
            "description": "Customer reports of app crashes and defects forwarded to engineering.",
            "keywords": ["crash", "app", "bug report", "engineering"],
            "events": [
                ("App crash bug report", "Customer bug report, app crash when opening the cart."),
                ("Forwarded app crash to engineering", "Forwarded three app crash bug reports to engineering."),
                ("Engineering fixed app crash", "Engineering shipped a fix for the app crash bug report."),
                ("New app crash on android", "New bug report, app crash on android after update."),
            ],
        },
        {
            "label": "Knowledge Base",
            "description": "Writing and updating help center articles and macros so customers can self serve.",
            "keywords": ["article", "help center", "macro", "self serve"],
            "events": [
                ("Wrote help center article", "Wrote a help center article on returns so customers self serve."),
                ("Updated macro and article", "Updated the refund macro and help center article wording."),
                ("Help center article views up", "Help center article views up, fewer tickets on returns."),
                ("Outdated help center macro removed", "Removed an outdated help center macro agents kept misusing."),
            ],
        },
        {
            "label": "Agent Training",
            "description": "Onboarding new support agents, coaching sessions and quality reviews.",
            "keywords": ["training", "agents", "coaching", "quality"],
            "events": [
                ("New agents training session", "Training session for new agents on the ticketing tool."),
                ("Coaching session on quality", "Coaching session with two agents on quality scores."),
                ("Quality review for agents training", "Quality review showed agents need more training on tone."),
            ],
        },
        {
            "label": "Satisfaction Surveys",
            "description": "Customer satisfaction survey scores and comments after ticket resolution.",
            "keywords": ["survey", "satisfaction", "csat", "score"],
            "events": [
                ("Satisfaction survey score dropped", "Weekly satisfaction survey score dropped to seventy eight."),
                ("Survey comments on wait times", "Satisfaction survey comments complain about wait times."),
                ("CSAT survey score recovered", "CSAT satisfaction survey score recovered to eighty five."),
            ],
        },
    ],
    "chains": [
        [
            ("Product Bugs", "Checkout app crash after release 5", "Bug report wave, checkout app crash after release 5."),
            ("Billing Disputes", "Double charge from checkout crash release 5", "Billing disputes for double charge caused by the checkout crash in release 5."),
            ("Escalations", "Escalated double charge checkout release 5", "Supervisor escalation for customers double charged by checkout release 5."),
            ("Satisfaction Surveys", "Survey score hit by checkout release 5", "Satisfaction survey score fell after the checkout release 5 double charges."),
        ],
        [
            ("Shipping Delays", "Warehouse strike shipping delay", "Warehouse strike caused shipping delay, tracking frozen."),
            ("Escalations", "Warehouse strike escalations rising", "Escalations rising from warehouse strike shipping delay complaints."),
            ("Knowledge Base", "Help center article on warehouse strike", "Wrote a help center article on the warehouse strike shipping delay."),
            ("Agent Training", "Agents training on warehouse strike macro", "Training agents on the warehouse strike macro and article."),
            ("Satisfaction Surveys", "Survey after warehouse strike recovery", "Satisfaction survey score recovered after the warehouse strike article."),
        ],
    ],
    "distractors": [
        ("Office plants watered", "Watered the office plants before the morning shift."),
        ("Holiday rota posted", "Holiday rota for next month got posted on the board."),
        ("Snacks delivery arrived", "The snacks delivery arrived for the break room."),
        ("Headset battery died", "My headset battery died halfway through the shift."),
        ("Coworker's farewell cake", "Farewell cake for a coworker moving to another city."),
    ],
    "relations": [
        ("Product Bugs", "Billing Disputes", "CAUSES"),
        ("Billing Disputes", "Escalations", "TRIGGERS"),
        ("Shipping Delays", "Escalations", "TRIGGERS"),
        ("Escalations", "Satisfaction Surveys", "CAUSES"),
        ("Knowledge Base", "Password Resets", "REINFORCE"),
        ("Knowledge Base", "Agent Training", "PART_OF"),
        ("Agent Training", "Satisfaction Surveys", "REINFORCE"),
        ("Shipping Delays", "Knowledge Base", "TRIGGERS"),
        ("Password Resets", "Escalations", "TRIGGERS"),
        ("Product Bugs", "Escalations", "TRIGGERS"),
        ("Satisfaction Surveys", "Agent Training", "TRIGGERS"),
    ],
    "hierarchy": [
        ("Ticket Categories", ["Password Resets", "Billing Disputes", "Shipping Delays", "Product Bugs"]),
        ("Support Operations", ["Escalations", "Knowledge Base", "Agent Training"]),
    ],
    "intents": [
        ("Cut escalations from billing errors", ["Billing Disputes", "Escalations", "Product Bugs"], "3+ billing disputes that escalate within a week"),
        ("Deflect repetitive tickets with self service", ["Password Resets", "Knowledge Base"], "repeated identical password reset tickets"),
    ],
}
