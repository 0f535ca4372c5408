with open("كلمات.txt", encoding="utf-8") as f:
    content = f.read()
word = ""
for ch in content:
    if ch == " ":
        if len(word) > 0:
            print(word)
        word = ""
    else:
        word = word + ch
if len(word) > 0:
    print(word)
