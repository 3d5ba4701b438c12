"""Walk one gameplay record through the difficulty pipeline, stage by stage.

Run: python3 demos/score_one_round.py
"""

from scramblefit.model import DifficultyModel, GameplayRecord, extract_features
from scramblefit.scramble import degree_of_scramble, normalized_hamming

model = DifficultyModel.default()

# A player saw 'tarew', needed two guesses and 15 seconds to find 'water',
# then rated the round 4 out of 10.
record = GameplayRecord(
    participant_id="demo",
    word="water",
    scramble="tarew",
    time_taken=15.0,
    num_guesses=2,
    was_skipped=False,
    urd=4,
    presentation_index=1,
)

print(f"word={record.word!r} scramble={record.scramble!r}")
print(f"  degree_of_scramble  {degree_of_scramble(record.word, record.scramble)}")
print(f"  normalized_hamming  {normalized_hamming(record.word, record.scramble)}")

features = extract_features(record)
print(f"\nfeatures: {features}")

ue = model.compute_ue(features.num_guesses, features.time_taken)
cow = model.compute_cow(features.word_length, features.degree_of_scramble)
iwd = model.compute_iwd(ue, cow, features.was_skipped)
print(f"\nstage 1: user effort      ue  = {ue:.4f}")
print(f"stage 1: word complexity  cow = {cow:.4f}")
print(f"stage 2: difficulty       iwd = {iwd:.4f}")

score = model.score_record(record)
assert score.iwd == iwd  # the one-call path is the same computation
print(f"\ncategory: {score.category.label} (user said {record.urd} -> "
      f"{'easy' if record.urd <= 4 else 'medium' if record.urd == 5 else 'hard'})")
